//! Coalgebra structures on the algebra: explicit coproduct tables, the
//! counit, coassociativity and counit checks, the two dual-module actions,
//! Frobenius-coalgebra nondegeneracy, cointegrals, group-likes, and the
//! primitive space.
//!
//! Coproducts are stored as explicit tables rather than formulas, so a table
//! can be mutated for negative tests or loaded from a file and validated.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{format_monomial, format_term, AlgElem, AlgebraSpec, ExponentVec};
use crate::error::QciError;
use crate::linalg::Matrix;
use crate::report::{CheckReport, Witness};
use crate::scalar::FieldScalar;

/// A sparse element of the tensor square of the algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElem {
    spec: Arc<AlgebraSpec>,
    coeffs: BTreeMap<(ExponentVec, ExponentVec), FieldScalar>,
}

impl TensorElem {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        TensorElem {
            spec: Arc::clone(spec),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        spec: &Arc<AlgebraSpec>,
        terms: impl IntoIterator<Item = (ExponentVec, ExponentVec, FieldScalar)>,
    ) -> Result<Self, QciError> {
        let mut out = TensorElem::zero(spec);
        for (u, w, c) in terms {
            if !spec.contains(&u) {
                return Err(QciError::ExponentOutOfRange(u.to_string()));
            }
            if !spec.contains(&w) {
                return Err(QciError::ExponentOutOfRange(w.to_string()));
            }
            if c.descriptor() != spec.field() {
                return Err(QciError::DescriptorMismatch {
                    left: spec.field().to_string(),
                    right: c.descriptor().to_string(),
                });
            }
            out.add_term(u, w, c);
        }
        Ok(out)
    }

    /// The simple tensor x (x) y, extended bilinearly over the inputs.
    pub fn product(x: &AlgElem, y: &AlgElem) -> Result<Self, QciError> {
        if x.spec() != y.spec() {
            return Err(QciError::SpecMismatch);
        }
        let mut out = TensorElem::zero(x.spec());
        for (u, cu) in x.terms() {
            for (w, cw) in y.terms() {
                out.add_term(u.clone(), w.clone(), cu.mul_raw(cw));
            }
        }
        Ok(out)
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, u: &ExponentVec, w: &ExponentVec) -> FieldScalar {
        self.coeffs
            .get(&(u.clone(), w.clone()))
            .cloned()
            .unwrap_or_else(|| FieldScalar::zero(self.spec.field()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ExponentVec, ExponentVec), &FieldScalar)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, u: ExponentVec, w: ExponentVec, c: FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry((u, w)) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add_raw(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &TensorElem) -> Result<TensorElem, QciError> {
        if self.spec != rhs.spec {
            return Err(QciError::SpecMismatch);
        }
        let mut out = self.clone();
        for ((u, w), c) in rhs.terms() {
            out.add_term(u.clone(), w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &TensorElem) -> Result<TensorElem, QciError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> TensorElem {
        let mut out = TensorElem::zero(&self.spec);
        for ((u, w), c) in self.terms() {
            out.add_term(u.clone(), w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, factor: &FieldScalar) -> TensorElem {
        let mut out = TensorElem::zero(&self.spec);
        for ((u, w), c) in self.terms() {
            out.add_term(u.clone(), w.clone(), c.mul_raw(factor));
        }
        out
    }

    /// Swap the tensor legs.
    pub fn twist(&self) -> TensorElem {
        let mut out = TensorElem::zero(&self.spec);
        for ((u, w), c) in self.terms() {
            out.add_term(w.clone(), u.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|((u, w), c)| {
                let mono = format!("{} (x) {}", format_monomial(u), format_monomial(w));
                format_term(c, &mono)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sparse element of the triple tensor power, used by the coassociativity
/// check.
type TripleTensor = BTreeMap<(ExponentVec, ExponentVec, ExponentVec), FieldScalar>;

fn triple_add(t: &mut TripleTensor, key: (ExponentVec, ExponentVec, ExponentVec), c: FieldScalar) {
    if c.is_zero() {
        return;
    }
    match t.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = slot.get().add_raw(&c);
            if sum.is_zero() {
                slot.remove();
            } else {
                slot.insert(sum);
            }
        }
    }
}

fn format_triple(t: &TripleTensor) -> String {
    if t.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = t
        .iter()
        .map(|((u, v, w), c)| {
            let mono = format!(
                "{} (x) {} (x) {}",
                format_monomial(u),
                format_monomial(v),
                format_monomial(w)
            );
            format_term(c, &mono)
        })
        .collect();
    parts.join(" + ")
}

/// An explicit comultiplication table: the image of every basis vector,
/// together with the counit values on the basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoproductTable {
    spec: Arc<AlgebraSpec>,
    images: Vec<TensorElem>,
    counit: Vec<FieldScalar>,
}

impl CoproductTable {
    /// Build a table with the standard counit (1 at the unit monomial).
    pub fn new(spec: &Arc<AlgebraSpec>, images: Vec<TensorElem>) -> Result<Self, QciError> {
        if images.len() != spec.dim() {
            return Err(QciError::InvalidCoproduct(format!(
                "table defines {} images, algebra dimension is {}",
                images.len(),
                spec.dim()
            )));
        }
        if let Some(bad) = images.iter().find(|t| t.spec() != spec) {
            let _ = bad;
            return Err(QciError::SpecMismatch);
        }
        let counit = spec.basis().iter().map(|v| spec.counit_value(v)).collect();
        Ok(CoproductTable {
            spec: Arc::clone(spec),
            images,
            counit,
        })
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn image_at(&self, index: usize) -> &TensorElem {
        &self.images[index]
    }

    pub fn image(&self, v: &ExponentVec) -> Result<&TensorElem, QciError> {
        Ok(&self.images[self.spec.index_of(v)?])
    }

    pub fn counit_at(&self, index: usize) -> &FieldScalar {
        &self.counit[index]
    }

    /// Replace the image of one basis vector (mutation testing, file input).
    pub fn set_image(&mut self, v: &ExponentVec, image: TensorElem) -> Result<(), QciError> {
        if image.spec() != &self.spec {
            return Err(QciError::SpecMismatch);
        }
        let idx = self.spec.index_of(v)?;
        self.images[idx] = image;
        Ok(())
    }

    /// Replace one counit value (mutation testing).
    pub fn set_counit_value(&mut self, v: &ExponentVec, value: FieldScalar) -> Result<(), QciError> {
        if value.descriptor() != self.spec.field() {
            return Err(QciError::DescriptorMismatch {
                left: self.spec.field().to_string(),
                right: value.descriptor().to_string(),
            });
        }
        let idx = self.spec.index_of(v)?;
        self.counit[idx] = value;
        Ok(())
    }

    /// Linear extension of the table to an arbitrary element.
    pub fn delta(&self, x: &AlgElem) -> Result<TensorElem, QciError> {
        if x.spec() != &self.spec {
            return Err(QciError::SpecMismatch);
        }
        let mut out = TensorElem::zero(&self.spec);
        for (v, c) in x.terms() {
            let img = self.image(v)?.scale(c);
            out = out.add(&img)?;
        }
        Ok(out)
    }

    /// Linear extension of the counit.
    pub fn counit(&self, x: &AlgElem) -> Result<FieldScalar, QciError> {
        if x.spec() != &self.spec {
            return Err(QciError::SpecMismatch);
        }
        let mut acc = FieldScalar::zero(self.spec.field());
        for (v, c) in x.terms() {
            acc = acc.add_raw(&c.mul_raw(self.counit_at(self.spec.index_of(v)?)));
        }
        Ok(acc)
    }
}

/// Verify (delta (x) id) delta = (id (x) delta) delta on every basis vector;
/// the witness carries the offending vector and both triple tensors.
pub fn check_coassociativity(d: &CoproductTable) -> Result<CheckReport, QciError> {
    let spec = d.spec();
    for v in spec.basis() {
        let image = d.image(&v)?;
        let mut lhs = TripleTensor::new();
        let mut rhs = TripleTensor::new();
        for ((u, w), c) in image.terms() {
            for ((u1, u2), c2) in d.image(u)?.terms() {
                triple_add(
                    &mut lhs,
                    (u1.clone(), u2.clone(), w.clone()),
                    c.mul_raw(c2),
                );
            }
            for ((w1, w2), c2) in d.image(w)?.terms() {
                triple_add(
                    &mut rhs,
                    (u.clone(), w1.clone(), w2.clone()),
                    c.mul_raw(c2),
                );
            }
        }
        if lhs != rhs {
            return Ok(CheckReport::fail(
                "coassociativity",
                Witness::new(format!("v={v}"), format_triple(&lhs), format_triple(&rhs)),
            ));
        }
    }
    Ok(CheckReport::pass("coassociativity"))
}

/// Verify (eps (x) id) delta = id = (id (x) eps) delta on every basis vector.
pub fn check_counit(d: &CoproductTable) -> Result<CheckReport, QciError> {
    let spec = d.spec();
    for v in spec.basis() {
        let expected = AlgElem::basis_elem(spec, &v)?;
        let image = d.image(&v)?;
        let mut left = AlgElem::zero(spec);
        let mut right = AlgElem::zero(spec);
        for ((u, w), c) in image.terms() {
            let eps_u = d.counit_at(spec.index_of(u)?);
            let eps_w = d.counit_at(spec.index_of(w)?);
            left = left.add(&AlgElem::from_terms(
                spec,
                [(w.clone(), c.mul_raw(eps_u))],
            )?)?;
            right = right.add(&AlgElem::from_terms(
                spec,
                [(u.clone(), c.mul_raw(eps_w))],
            )?)?;
        }
        if left != expected {
            return Ok(CheckReport::fail(
                "counit-identities",
                Witness::new(format!("v={v} (left identity)"), &left, &expected),
            ));
        }
        if right != expected {
            return Ok(CheckReport::fail(
                "counit-identities",
                Witness::new(format!("v={v} (right identity)"), &right, &expected),
            ));
        }
    }
    Ok(CheckReport::pass("counit-identities"))
}

/// Verify that the table's counit is an algebra homomorphism:
/// eps(x_u x_v) = eps(x_u) eps(x_v) on all basis pairs, and eps(1) = 1.
pub fn check_counit_algebra_map(d: &CoproductTable) -> Result<CheckReport, QciError> {
    let spec = d.spec();
    let name = "counit-is-algebra-map";
    let one = AlgElem::unit(spec);
    let eps_one = d.counit(&one)?;
    if !eps_one.is_one() {
        return Ok(CheckReport::fail(
            name,
            Witness::new("v=0 (unit)", eps_one, FieldScalar::one(spec.field())),
        ));
    }
    let basis = spec.basis();
    for u in &basis {
        for v in &basis {
            let prod = crate::algebra::mono_mul(spec, u, v)?;
            let lhs = d.counit(&prod)?;
            let rhs = d
                .counit_at(spec.index_of(u)?)
                .mul_raw(d.counit_at(spec.index_of(v)?));
            if lhs != rhs {
                return Ok(CheckReport::fail(
                    name,
                    Witness::new(format!("u={u}, v={v}"), lhs, rhs),
                ));
            }
        }
    }
    Ok(CheckReport::pass(name))
}

/// The left action of a functional: f -> c = sum c_1 f(c_2).
pub fn dual_left_action(
    f: &AlgElem,
    c: &AlgElem,
    d: &CoproductTable,
) -> Result<AlgElem, QciError> {
    let spec = d.spec();
    let image = d.delta(c)?;
    let mut out = AlgElem::zero(spec);
    for ((u, w), coeff) in image.terms() {
        let fw = f.pair_dual(&AlgElem::basis_elem(spec, w)?)?;
        out = out.add(&AlgElem::from_terms(spec, [(u.clone(), coeff.mul_raw(&fw))])?)?;
    }
    Ok(out)
}

/// The right action of a functional: c <- f = sum f(c_1) c_2.
pub fn dual_right_action(
    c: &AlgElem,
    f: &AlgElem,
    d: &CoproductTable,
) -> Result<AlgElem, QciError> {
    let spec = d.spec();
    let image = d.delta(c)?;
    let mut out = AlgElem::zero(spec);
    for ((u, w), coeff) in image.terms() {
        let fu = f.pair_dual(&AlgElem::basis_elem(spec, u)?)?;
        out = out.add(&AlgElem::from_terms(spec, [(w.clone(), coeff.mul_raw(&fu))])?)?;
    }
    Ok(out)
}

/// Convolution product of two functionals: (f * g)(x) = sum f(x_1) g(x_2).
/// This is the multiplication of the dual algebra, so both dual actions are
/// module actions over it.
pub fn convolve(f: &AlgElem, g: &AlgElem, d: &CoproductTable) -> Result<AlgElem, QciError> {
    let spec = d.spec();
    let mut terms = Vec::new();
    for v in spec.basis() {
        let mut acc = FieldScalar::zero(spec.field());
        for ((u, w), coeff) in d.image(&v)?.terms() {
            let fu = f.pair_dual(&AlgElem::basis_elem(spec, u)?)?;
            let gw = g.pair_dual(&AlgElem::basis_elem(spec, w)?)?;
            acc = acc.add_raw(&coeff.mul_raw(&fu).mul_raw(&gw));
        }
        terms.push((v, acc));
    }
    AlgElem::from_terms(spec, terms)
}

/// Frobenius-coalgebra test: whether { t <- x_v^* } spans the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusCoalgebra {
    pub spans: bool,
    pub rank: usize,
}

pub fn is_frobenius_coalgebra(
    d: &CoproductTable,
    t: &AlgElem,
) -> Result<FrobeniusCoalgebra, QciError> {
    let spec = d.spec();
    let dim = spec.dim();
    let basis = spec.basis();
    let mut m = Matrix::zero(dim, dim, spec.field());
    for (col, v) in basis.iter().enumerate() {
        let f = AlgElem::basis_elem(spec, v)?;
        let vec = dual_right_action(t, &f, d)?.to_coeff_vec();
        for (row, entry) in vec.into_iter().enumerate() {
            m.set_entry(row, col, entry);
        }
    }
    let rank = m.rank();
    Ok(FrobeniusCoalgebra {
        spans: rank == dim,
        rank,
    })
}

/// Bases of the right and left cointegral spaces (as functionals on the
/// dual basis), and whether they coincide.
#[derive(Clone, Debug)]
pub struct CointegralSpaces {
    pub right: Vec<AlgElem>,
    pub left: Vec<AlgElem>,
    pub counimodular: bool,
}

/// Solve the linear systems defining cointegrals with respect to the
/// group-like element 1: right cointegrals satisfy x <- phi = phi(x) 1,
/// left cointegrals phi -> x = phi(x) 1, for every x.
pub fn cointegral_spaces(d: &CoproductTable) -> Result<CointegralSpaces, QciError> {
    let spec = d.spec();
    let one = AlgElem::unit(spec);
    if !grouplike_check(d, &one)? {
        return Err(QciError::Precondition(
            "cointegrals are computed against the group-like element 1, \
             but 1 is not group-like in this table"
            .into(),
        ));
    }
    let right = cointegral_basis(d, false)?;
    let left = cointegral_basis(d, true)?;
    let counimodular = functional_same_span(spec, &right, &left);
    Ok(CointegralSpaces {
        right,
        left,
        counimodular,
    })
}

fn cointegral_basis(d: &CoproductTable, left_action: bool) -> Result<Vec<AlgElem>, QciError> {
    let spec = d.spec();
    let dim = spec.dim();
    let basis = spec.basis();
    let zero_index = spec.index_of(&ExponentVec::zeros(spec.generators()))?;
    // Unknowns: the values f_w = phi(x_w). One block of dim equations per
    // basis vector v, matching coefficients of each basis vector u.
    let mut m = Matrix::zero(dim * dim, dim, spec.field());
    for (vi, v) in basis.iter().enumerate() {
        for ((t1, t2), c) in d.image(v)?.terms() {
            // Right action sum f(t1) t2; left action sum t1 f(t2).
            let (applied, kept) = if left_action { (t2, t1) } else { (t1, t2) };
            let row = vi * dim + spec.index_of(kept)?;
            let col = spec.index_of(applied)?;
            let cur = m.entry(row, col).add_raw(c);
            m.set_entry(row, col, cur);
        }
        // Minus phi(x_v) at the unit coordinate.
        let row = vi * dim + zero_index;
        let cur = m
            .entry(row, vi)
            .sub_raw(&FieldScalar::one(spec.field()));
        m.set_entry(row, vi, cur);
    }
    m.nullspace()
        .into_iter()
        .map(|vec| AlgElem::from_coeff_vec(spec, &vec))
        .collect()
}

fn functional_same_span(spec: &Arc<AlgebraSpec>, a: &[AlgElem], b: &[AlgElem]) -> bool {
    let dim = spec.dim();
    let rank_of = |rows: Vec<Vec<FieldScalar>>| -> usize {
        if rows.is_empty() {
            return 0;
        }
        Matrix::new(rows.len(), dim, rows.concat())
            .expect("coefficient vectors share the spec field")
            .rank()
    };
    let rows_a: Vec<_> = a.iter().map(AlgElem::to_coeff_vec).collect();
    let rows_b: Vec<_> = b.iter().map(AlgElem::to_coeff_vec).collect();
    let ra = rank_of(rows_a.clone());
    let rb = rank_of(rows_b.clone());
    let mut all = rows_a;
    all.extend(rows_b);
    ra == rb && rb == rank_of(all)
}

/// Basis and dimension of the primitive space
/// P(A) = { x : delta(x) = 1 (x) x + x (x) 1 }.
#[derive(Clone, Debug)]
pub struct PrimitiveSpace {
    pub basis: Vec<AlgElem>,
    pub dim: usize,
}

/// Nullspace of x -> delta(x) - 1 (x) x - x (x) 1 over the full coefficient
/// space. The unit's coefficient participates as an unknown; the system
/// itself rules it out.
pub fn primitive_space(d: &CoproductTable) -> Result<PrimitiveSpace, QciError> {
    let spec = d.spec();
    let dim = spec.dim();
    let basis = spec.basis();
    let zero = ExponentVec::zeros(spec.generators());
    let tensor_index =
        |u: &ExponentVec, w: &ExponentVec| -> Result<usize, QciError> {
            Ok(spec.index_of(u)? * dim + spec.index_of(w)?)
        };
    let mut m = Matrix::zero(dim * dim, dim, spec.field());
    for (col, w) in basis.iter().enumerate() {
        for ((t1, t2), c) in d.image(w)?.terms() {
            let row = tensor_index(t1, t2)?;
            let cur = m.entry(row, col).add_raw(c);
            m.set_entry(row, col, cur);
        }
        for row in [tensor_index(&zero, w)?, tensor_index(w, &zero)?] {
            let cur = m
                .entry(row, col)
                .sub_raw(&FieldScalar::one(spec.field()));
            m.set_entry(row, col, cur);
        }
    }
    let basis_elems: Vec<AlgElem> = m
        .nullspace()
        .into_iter()
        .map(|vec| AlgElem::from_coeff_vec(spec, &vec))
        .collect::<Result<_, _>>()?;
    Ok(PrimitiveSpace {
        dim: basis_elems.len(),
        basis: basis_elems,
    })
}

/// Whether c is group-like: delta(c) = c (x) c and eps(c) = 1.
pub fn grouplike_check(d: &CoproductTable, c: &AlgElem) -> Result<bool, QciError> {
    let image = d.delta(c)?;
    let square = TensorElem::product(c, c)?;
    Ok(image == square && d.counit(c)?.is_one())
}

/// Whether the coproduct is invariant under the twist map.
pub fn is_cocommutative(d: &CoproductTable) -> Result<bool, QciError> {
    for v in d.spec().basis() {
        let image = d.image(&v)?;
        if *image != image.twist() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of comparing two coproduct tables through computable coalgebra
/// invariants. Equal invariants never certify an isomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantComparison {
    pub left_primitive_dim: usize,
    pub right_primitive_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_cointegral_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_cointegral_dim: Option<usize>,
    /// A non-isomorphism certificate naming the separating invariant, or
    /// `None` when the comparison is inconclusive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinguished_by: Option<String>,
}

impl InvariantComparison {
    pub fn is_distinguished(&self) -> bool {
        self.distinguished_by.is_some()
    }
}

/// Compare two tables over the same spec by primitive-space dimension and,
/// when 1 is group-like in both, right-cointegral dimension. A differing
/// invariant certifies that the coalgebras cannot be isomorphic.
pub fn coalgebra_invariant_compare(
    d1: &CoproductTable,
    d2: &CoproductTable,
) -> Result<InvariantComparison, QciError> {
    if d1.spec() != d2.spec() {
        return Err(QciError::SpecMismatch);
    }
    let p1 = primitive_space(d1)?.dim;
    let p2 = primitive_space(d2)?.dim;
    let c1 = cointegral_spaces(d1).ok().map(|s| s.right.len());
    let c2 = cointegral_spaces(d2).ok().map(|s| s.right.len());
    let distinguished_by = if p1 != p2 {
        Some(format!("primitive space dimensions differ: {p1} vs {p2}"))
    } else if let (Some(a), Some(b)) = (c1, c2) {
        if a != b {
            Some(format!(
                "right cointegral space dimensions differ: {a} vs {b}"
            ))
        } else {
            None
        }
    } else {
        None
    };
    Ok(InvariantComparison {
        left_primitive_dim: p1,
        right_primitive_dim: p2,
        left_cointegral_dim: c1,
        right_cointegral_dim: c2,
        distinguished_by,
    })
}
