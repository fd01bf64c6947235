//! The quantum complete intersection algebra A(q, a_1, ..., a_n): the
//! truncated skew-commutative algebra
//!
//!   k<x_1,...,x_n> / < x_i^{a_i},  x_i x_j + q_{ij} x_j x_i >
//!
//! with q_{ii} = -1 and q_{ij} q_{ji} = 1. Monomials are kept in the sorted
//! normal form x_1^{v_1} ... x_n^{v_n}; reordering costs the bracket scalar
//! q^<u|v> = prod_{i<j} (-1/q_{ij})^{u_j v_i}, so that x_u x_v = q^<u|v>
//! x_{u+v} with truncation when any exponent reaches a_i.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::QciError;
use crate::linalg::Matrix;
use crate::scalar::{FieldDescriptor, FieldScalar};

/// A monomial exponent vector v, indexing the basis element x_v.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentVec(Vec<u32>);

impl ExponentVec {
    pub fn new(components: Vec<u32>) -> Self {
        ExponentVec(components)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVec(vec![0; n])
    }

    /// The standard unit vector e_i (zero-based index).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVec(v)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total degree |x_v| = sum of components.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn add(&self, rhs: &ExponentVec) -> ExponentVec {
        debug_assert_eq!(self.len(), rhs.len());
        ExponentVec(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, `None` when any component would go negative.
    pub fn checked_sub(&self, rhs: &ExponentVec) -> Option<ExponentVec> {
        debug_assert_eq!(self.len(), rhs.len());
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(ExponentVec)
    }

    /// The partial order u <= v: componentwise comparison.
    pub fn le(&self, rhs: &ExponentVec) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Render x_v in the sorted normal form, e.g. `x1 x2^2`; the empty monomial
/// renders as `1`.
pub fn format_monomial(v: &ExponentVec) -> String {
    if v.is_zero() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for (i, &e) in v.components().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, e)),
        }
    }
    parts.join(" ")
}

/// The commutation matrix q = (q_{ij}), with q_{ii} = -1 and
/// q_{ij} q_{ji} = 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    n: usize,
    entries: Vec<FieldScalar>,
}

impl QMatrix {
    pub fn new(rows: Vec<Vec<FieldScalar>>) -> Result<Self, QciError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(QciError::InvalidSpec(
                "commutation matrix must be square".into(),
            ));
        }
        let entries: Vec<FieldScalar> = rows.into_iter().flatten().collect();
        if entries.is_empty() {
            return Err(QciError::InvalidSpec(
                "commutation matrix must be nonempty".into(),
            ));
        }
        let desc = entries[0].descriptor();
        if entries.iter().any(|e| e.descriptor() != desc) {
            return Err(QciError::InvalidSpec(
                "commutation matrix entries must share one field".into(),
            ));
        }
        let q = QMatrix { n, entries };
        let minus_one = FieldScalar::minus_one(desc);
        for i in 0..n {
            if *q.entry(i, i) != minus_one {
                return Err(QciError::InvalidSpec(format!(
                    "q[{},{}] must be -1, got {}",
                    i + 1,
                    i + 1,
                    q.entry(i, i)
                )));
            }
            for j in 0..n {
                let prod = q.entry(i, j).mul(q.entry(j, i))?;
                if !prod.is_one() {
                    return Err(QciError::InvalidSpec(format!(
                        "q[{},{}] * q[{},{}] must be 1, got {}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        prod
                    )));
                }
            }
        }
        Ok(q)
    }

    /// The matrix with one scalar q in every upper-triangular slot and 1/q
    /// below the diagonal.
    pub fn constant(n: usize, q: &FieldScalar) -> Result<Self, QciError> {
        let desc = q.descriptor();
        let q_inv = q.inv()?;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(if i == j {
                    FieldScalar::minus_one(desc)
                } else if i < j {
                    q.clone()
                } else {
                    q_inv.clone()
                });
            }
            rows.push(row);
        }
        QMatrix::new(rows)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldScalar {
        &self.entries[i * self.n + j]
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.entries[0].descriptor()
    }

    /// Whether every off-diagonal entry equals -1 (the commutative case).
    pub fn is_all_minus_one(&self) -> bool {
        let minus_one = FieldScalar::minus_one(self.descriptor());
        self.entries.iter().all(|e| *e == minus_one)
    }

    /// Whether q_{ij}^2 = 1 for all i, j.
    pub fn all_entries_square_to_one(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.mul_raw(e).is_one())
    }
}

/// The defining data of A(q, a_1, ..., a_n): field, exponent bounds, and
/// commutation matrix. Immutable after validation; shared via `Arc`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
    field: FieldDescriptor,
    a: Vec<u32>,
    q: QMatrix,
    dim: usize,
}

impl AlgebraSpec {
    pub fn new(field: FieldDescriptor, a: Vec<u32>, q: QMatrix) -> Result<Arc<Self>, QciError> {
        let n = a.len();
        if n < 2 {
            return Err(QciError::InvalidSpec(format!(
                "need at least two generators, got {n}"
            )));
        }
        if let Some(bad) = a.iter().find(|&&ai| ai < 2) {
            return Err(QciError::InvalidSpec(format!(
                "every exponent bound must be at least 2, got {bad}"
            )));
        }
        if q.size() != n {
            return Err(QciError::InvalidSpec(format!(
                "commutation matrix is {}x{} but there are {n} generators",
                q.size(),
                q.size()
            )));
        }
        if q.descriptor() != field {
            return Err(QciError::InvalidSpec(format!(
                "commutation matrix lives over {}, spec field is {field}",
                q.descriptor()
            )));
        }
        let mut dim: usize = 1;
        for &ai in &a {
            dim = dim
                .checked_mul(ai as usize)
                .ok_or_else(|| QciError::InvalidSpec("dimension overflow".into()))?;
        }
        Ok(Arc::new(AlgebraSpec { field, a, q, dim }))
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn bounds(&self) -> &[u32] {
        &self.a
    }

    pub fn generators(&self) -> usize {
        self.a.len()
    }

    pub fn q_matrix(&self) -> &QMatrix {
        &self.q
    }

    /// dim A = prod a_i.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The top exponent vector a - 1 = (a_1 - 1, ..., a_n - 1).
    pub fn top(&self) -> ExponentVec {
        ExponentVec(self.a.iter().map(|&ai| ai - 1).collect())
    }

    pub fn contains(&self, v: &ExponentVec) -> bool {
        v.len() == self.a.len()
            && v.components()
                .iter()
                .zip(&self.a)
                .all(|(&vi, &ai)| vi < ai)
    }

    /// All exponent vectors of the basis index set, in lexicographic order
    /// on components. Every matrix in the crate indexes against this order.
    pub fn basis(&self) -> Vec<ExponentVec> {
        let n = self.a.len();
        let mut out = Vec::with_capacity(self.dim);
        let mut cur = vec![0u32; n];
        loop {
            out.push(ExponentVec(cur.clone()));
            // Odometer increment with the last component fastest.
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.a[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Position of v in the lexicographic basis order.
    pub fn index_of(&self, v: &ExponentVec) -> Result<usize, QciError> {
        if !self.contains(v) {
            return Err(QciError::ExponentOutOfRange(v.to_string()));
        }
        let mut idx = 0usize;
        for (vi, &ai) in v.components().iter().zip(&self.a) {
            idx = idx * ai as usize + *vi as usize;
        }
        Ok(idx)
    }

    /// The bracket scalar q^<u|v> = prod_{i<j} (-1/q_{ij})^{u_j v_i}
    /// governing x_u x_v = q^<u|v> x_{u+v}. Always nonzero.
    pub fn q_bracket(&self, u: &ExponentVec, v: &ExponentVec) -> FieldScalar {
        let n = self.a.len();
        let mut acc = FieldScalar::one(self.field);
        for i in 0..n {
            for j in (i + 1)..n {
                let e = u.get(j) as i64 * v.get(i) as i64;
                if e == 0 {
                    continue;
                }
                let base = self
                    .q
                    .entry(i, j)
                    .inv()
                    .expect("commutation entries are invertible")
                    .neg();
                acc = acc.mul_raw(&base.pow(e).expect("nonzero base"));
            }
        }
        acc
    }

    /// The counit value on a basis vector: 1 at the unit monomial, 0
    /// elsewhere. The unique algebra map to the field, since the algebra is
    /// local with maximal ideal spanned by the non-unit monomials.
    pub fn counit_value(&self, v: &ExponentVec) -> FieldScalar {
        if v.is_zero() {
            FieldScalar::one(self.field)
        } else {
            FieldScalar::zero(self.field)
        }
    }
}

/// An element of the algebra, or (read against the dual basis) a linear
/// functional on it. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgElem {
    spec: Arc<AlgebraSpec>,
    coeffs: BTreeMap<ExponentVec, FieldScalar>,
}

impl AlgElem {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Self {
        AlgElem {
            spec: Arc::clone(spec),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(spec: &Arc<AlgebraSpec>) -> Self {
        Self::basis_elem(spec, &ExponentVec::zeros(spec.generators()))
            .expect("the zero vector always lies in the basis index set")
    }

    pub fn basis_elem(spec: &Arc<AlgebraSpec>, v: &ExponentVec) -> Result<Self, QciError> {
        if !spec.contains(v) {
            return Err(QciError::ExponentOutOfRange(v.to_string()));
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(v.clone(), FieldScalar::one(spec.field()));
        Ok(AlgElem {
            spec: Arc::clone(spec),
            coeffs,
        })
    }

    pub fn from_terms(
        spec: &Arc<AlgebraSpec>,
        terms: impl IntoIterator<Item = (ExponentVec, FieldScalar)>,
    ) -> Result<Self, QciError> {
        let mut elem = AlgElem::zero(spec);
        for (v, c) in terms {
            if !spec.contains(&v) {
                return Err(QciError::ExponentOutOfRange(v.to_string()));
            }
            if c.descriptor() != spec.field() {
                return Err(QciError::DescriptorMismatch {
                    left: spec.field().to_string(),
                    right: c.descriptor().to_string(),
                });
            }
            elem.add_term(v, c);
        }
        Ok(elem)
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, v: &ExponentVec) -> FieldScalar {
        self.coeffs
            .get(v)
            .cloned()
            .unwrap_or_else(|| FieldScalar::zero(self.spec.field()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVec, &FieldScalar)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, v: ExponentVec, c: FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(v) {
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

    fn check_spec(&self, rhs: &AlgElem) -> Result<(), QciError> {
        if self.spec == rhs.spec {
            Ok(())
        } else {
            Err(QciError::SpecMismatch)
        }
    }

    pub fn add(&self, rhs: &AlgElem) -> Result<AlgElem, QciError> {
        self.check_spec(rhs)?;
        let mut out = self.clone();
        for (v, c) in rhs.terms() {
            out.add_term(v.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &AlgElem) -> Result<AlgElem, QciError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> AlgElem {
        let mut out = AlgElem::zero(&self.spec);
        for (v, c) in self.terms() {
            out.add_term(v.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, factor: &FieldScalar) -> Result<AlgElem, QciError> {
        if factor.descriptor() != self.spec.field() {
            return Err(QciError::DescriptorMismatch {
                left: self.spec.field().to_string(),
                right: factor.descriptor().to_string(),
            });
        }
        let mut out = AlgElem::zero(&self.spec);
        for (v, c) in self.terms() {
            out.add_term(v.clone(), c.mul_raw(factor));
        }
        Ok(out)
    }

    /// Bilinear product, associative with unit x_0.
    pub fn mul(&self, rhs: &AlgElem) -> Result<AlgElem, QciError> {
        self.check_spec(rhs)?;
        let mut out = AlgElem::zero(&self.spec);
        for (u, cu) in self.terms() {
            for (v, cv) in rhs.terms() {
                let prod = mono_mul(&self.spec, u, v)?;
                for (w, cw) in prod.terms() {
                    out.add_term(w.clone(), cw.mul_raw(cu).mul_raw(cv));
                }
            }
        }
        Ok(out)
    }

    /// Pair this element, read as a functional on the dual basis, against an
    /// algebra element: sum of coeff products under the delta pairing.
    pub fn pair_dual(&self, x: &AlgElem) -> Result<FieldScalar, QciError> {
        self.check_spec(x)?;
        let mut acc = FieldScalar::zero(self.spec.field());
        for (v, c) in self.terms() {
            acc = acc.add_raw(&c.mul_raw(&x.coeff(v)));
        }
        Ok(acc)
    }

    /// Dense coefficient vector in basis order.
    pub fn to_coeff_vec(&self) -> Vec<FieldScalar> {
        let mut out = vec![FieldScalar::zero(self.spec.field()); self.spec.dim()];
        for (v, c) in self.terms() {
            let idx = self
                .spec
                .index_of(v)
                .expect("stored keys lie in the basis index set");
            out[idx] = c.clone();
        }
        out
    }

    pub fn from_coeff_vec(
        spec: &Arc<AlgebraSpec>,
        coeffs: &[FieldScalar],
    ) -> Result<AlgElem, QciError> {
        if coeffs.len() != spec.dim() {
            return Err(QciError::DimensionMismatch(format!(
                "coefficient vector has {} entries, algebra dimension is {}",
                coeffs.len(),
                spec.dim()
            )));
        }
        AlgElem::from_terms(
            spec,
            spec.basis().into_iter().zip(coeffs.iter().cloned()),
        )
    }

    /// Apply the counit linearly.
    pub fn counit(&self) -> FieldScalar {
        self.coeff(&ExponentVec::zeros(self.spec.generators()))
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(v, c)| format_term(c, &format_monomial(v)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Render one `coeff * monomial` term; the coefficient is parenthesized when
/// its literal would be ambiguous inside a sum.
pub(crate) fn format_term(c: &FieldScalar, mono: &str) -> String {
    if c.is_one() && mono != "1" {
        return mono.to_string();
    }
    let lit = c.to_string();
    let needs_parens = lit.contains(' ') || lit[1..].contains(['+', '-']);
    let lit = if needs_parens { format!("({lit})") } else { lit };
    if mono == "1" {
        lit
    } else {
        format!("{lit} {mono}")
    }
}

/// Product of two basis monomials: q^<u|v> x_{u+v}, or zero once any
/// exponent reaches its bound.
pub fn mono_mul(
    spec: &Arc<AlgebraSpec>,
    u: &ExponentVec,
    v: &ExponentVec,
) -> Result<AlgElem, QciError> {
    if !spec.contains(u) {
        return Err(QciError::ExponentOutOfRange(u.to_string()));
    }
    if !spec.contains(v) {
        return Err(QciError::ExponentOutOfRange(v.to_string()));
    }
    let sum = u.add(v);
    if !spec.contains(&sum) {
        return Ok(AlgElem::zero(spec));
    }
    AlgElem::from_terms(spec, [(sum, spec.q_bracket(u, v))])
}

/// Outcome of the Frobenius-functional test: the rank criterion and the
/// closed-form criterion (nonzero coefficient at the top monomial), which
/// must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusFunctional {
    pub nondegenerate: bool,
    pub form_rank: usize,
}

/// Decide whether a functional (coefficients on the dual basis) is a
/// Frobenius homomorphism: the bilinear form (x, y) -> phi(xy) must have
/// full rank. Cross-checked against the closed form "top coefficient is
/// nonzero"; disagreement is an internal error.
pub fn is_frobenius_functional(phi: &AlgElem) -> Result<FrobeniusFunctional, QciError> {
    let spec = phi.spec();
    let basis = spec.basis();
    let dim = spec.dim();
    let mut form = Matrix::zero(dim, dim, spec.field());
    for (r, u) in basis.iter().enumerate() {
        for (c, v) in basis.iter().enumerate() {
            let prod = mono_mul(spec, u, v)?;
            form.set_entry(r, c, phi.pair_dual(&prod)?);
        }
    }
    let rank = form.rank();
    let nondegenerate = rank == dim;
    let closed_form = !phi.coeff(&spec.top()).is_zero();
    if nondegenerate != closed_form {
        return Err(QciError::InternalInconsistency(format!(
            "rank test ({nondegenerate}) disagrees with the top-coefficient \
             criterion ({closed_form}) for {phi}"
        )));
    }
    Ok(FrobeniusFunctional {
        nondegenerate,
        form_rank: rank,
    })
}

/// Bases of the right and left integral spaces, and whether they coincide.
#[derive(Clone, Debug)]
pub struct IntegralSpaces {
    pub right: Vec<AlgElem>,
    pub left: Vec<AlgElem>,
    pub unimodular: bool,
}

/// Solve for the integrals: right integrals satisfy t x_i = 0 for every
/// generator (equivalently t x = eps(x) t), left integrals the mirror image.
pub fn integral_spaces(spec: &Arc<AlgebraSpec>) -> Result<IntegralSpaces, QciError> {
    let right = annihilator_basis(spec, false)?;
    let left = annihilator_basis(spec, true)?;
    let unimodular = same_span(spec, &right, &left);
    Ok(IntegralSpaces {
        right,
        left,
        unimodular,
    })
}

fn annihilator_basis(
    spec: &Arc<AlgebraSpec>,
    multiply_on_left: bool,
) -> Result<Vec<AlgElem>, QciError> {
    let basis = spec.basis();
    let n = spec.generators();
    let dim = spec.dim();
    // Rows: one equation per (generator, output basis vector); columns: the
    // unknown coefficients of t.
    let mut m = Matrix::zero(n * dim, dim, spec.field());
    for (col, w) in basis.iter().enumerate() {
        for i in 0..n {
            let e_i = ExponentVec::unit(n, i);
            let prod = if multiply_on_left {
                mono_mul(spec, &e_i, w)?
            } else {
                mono_mul(spec, w, &e_i)?
            };
            for (u, c) in prod.terms() {
                let row = i * dim + spec.index_of(u)?;
                m.set_entry(row, col, c.clone());
            }
        }
    }
    m.nullspace()
        .into_iter()
        .map(|v| AlgElem::from_coeff_vec(spec, &v))
        .collect()
}

/// Whether two families of elements span the same subspace.
fn same_span(spec: &Arc<AlgebraSpec>, a: &[AlgElem], b: &[AlgElem]) -> bool {
    let dim = spec.dim();
    let stack = |elems: &[AlgElem]| -> Vec<Vec<FieldScalar>> {
        elems.iter().map(|e| e.to_coeff_vec()).collect()
    };
    let rank_of = |rows: &[Vec<FieldScalar>]| -> usize {
        if rows.is_empty() {
            return 0;
        }
        Matrix::new(rows.len(), dim, rows.concat())
            .expect("coefficient vectors share the spec field")
            .rank()
    };
    let ra = rank_of(&stack(a));
    let rb = rank_of(&stack(b));
    let mut all = stack(a);
    all.extend(stack(b));
    let rab = rank_of(&all);
    ra == rb && rb == rab
}

/// Per-generator values of the symmetry criterion
/// prod_i (-q_{ij})^{a_i - 1}, and the overall verdict (all equal to 1),
/// which characterizes when the algebra is a symmetric Frobenius algebra.
#[derive(Clone, Debug)]
pub struct SymmetryCriterion {
    pub factors: Vec<FieldScalar>,
    pub symmetric: bool,
}

pub fn symmetric_criterion(spec: &AlgebraSpec) -> SymmetryCriterion {
    let n = spec.generators();
    let mut factors = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = FieldScalar::one(spec.field());
        for i in 0..n {
            let base = spec.q_matrix().entry(i, j).neg();
            let e = (spec.bounds()[i] - 1) as i64;
            acc = acc.mul_raw(&base.pow(e).expect("nonzero base"));
        }
        factors.push(acc);
    }
    let symmetric = factors.iter().all(|f| f.is_one());
    SymmetryCriterion { factors, symmetric }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime_field(p).unwrap()
    }

    fn scalar(desc: FieldDescriptor, n: i64) -> FieldScalar {
        FieldScalar::from_integer(desc, n)
    }

    /// A two-generator spec with q_{12} = q over the given field.
    fn spec2(desc: FieldDescriptor, a: (u32, u32), q: i64) -> Arc<AlgebraSpec> {
        let qm = QMatrix::constant(2, &scalar(desc, q)).unwrap();
        AlgebraSpec::new(desc, vec![a.0, a.1], qm).unwrap()
    }

    fn ev(components: &[u32]) -> ExponentVec {
        ExponentVec::new(components.to_vec())
    }

    #[test]
    fn basis_enumeration_is_lexicographic() {
        let spec = spec2(FieldDescriptor::rationals(), (2, 2), -1);
        let basis = spec.basis();
        assert_eq!(
            basis,
            vec![ev(&[0, 0]), ev(&[0, 1]), ev(&[1, 0]), ev(&[1, 1])]
        );
        for (i, v) in basis.iter().enumerate() {
            assert_eq!(spec.index_of(v).unwrap(), i);
        }

        let spec = spec2(FieldDescriptor::rationals(), (2, 3), -1);
        let basis = spec.basis();
        assert_eq!(basis.len(), 6);
        assert_eq!(basis[0], ev(&[0, 0]));
        assert_eq!(basis[5], ev(&[1, 2]));
    }

    #[test]
    fn single_generator_is_rejected() {
        let desc = FieldDescriptor::rationals();
        let qm = QMatrix::new(vec![vec![FieldScalar::minus_one(desc)]]).unwrap();
        assert!(matches!(
            AlgebraSpec::new(desc, vec![3], qm),
            Err(QciError::InvalidSpec(_))
        ));
    }

    #[test]
    fn exponent_bound_below_two_is_rejected() {
        let desc = FieldDescriptor::rationals();
        let qm = QMatrix::constant(2, &scalar(desc, -1)).unwrap();
        assert!(AlgebraSpec::new(desc, vec![2, 1], qm).is_err());
    }

    #[test]
    fn q_matrix_invariants_are_enforced() {
        let desc = fp(5);
        // q_{11} != -1
        assert!(QMatrix::new(vec![
            vec![scalar(desc, 1), scalar(desc, 1)],
            vec![scalar(desc, 1), scalar(desc, -1)],
        ])
        .is_err());
        // q_{12} q_{21} != 1
        assert!(QMatrix::new(vec![
            vec![scalar(desc, -1), scalar(desc, 2)],
            vec![scalar(desc, 2), scalar(desc, -1)],
        ])
        .is_err());
        // Valid: q_{12} = 2, q_{21} = 3 over F_5.
        assert!(QMatrix::new(vec![
            vec![scalar(desc, -1), scalar(desc, 2)],
            vec![scalar(desc, 3), scalar(desc, -1)],
        ])
        .is_ok());
    }

    #[test]
    fn bracket_on_unit_vectors() {
        // <e1|e2> has exponent u_2 v_1 = 0, so the scalar is 1 for any q.
        let spec = spec2(fp(5), (2, 2), 2);
        let one = FieldScalar::one(fp(5));
        assert_eq!(spec.q_bracket(&ev(&[1, 0]), &ev(&[0, 1])), one);

        // <e2|e1> picks up a single factor -1/q_{12}.
        // Oracle: the defining relation x1 x2 = -q x2 x1 rewrites
        // x2 x1 = (-1/q) x1 x2.
        let expected = scalar(fp(5), 2).inv().unwrap().neg();
        assert_eq!(spec.q_bracket(&ev(&[0, 1]), &ev(&[1, 0])), expected);

        // q = -1 makes the factor (-1/-1) = 1.
        let spec = spec2(FieldDescriptor::rationals(), (2, 2), -1);
        assert_eq!(
            spec.q_bracket(&ev(&[0, 1]), &ev(&[1, 0])),
            FieldScalar::one(FieldDescriptor::rationals())
        );
    }

    #[test]
    fn monomial_products_truncate() {
        let spec = spec2(FieldDescriptor::rationals(), (2, 3), -1);
        // x1 * x1 dies because a_1 = 2.
        assert!(mono_mul(&spec, &ev(&[1, 0]), &ev(&[1, 0]))
            .unwrap()
            .is_zero());
        // The unit is neutral.
        let xv = ev(&[1, 2]);
        let prod = mono_mul(&spec, &ev(&[0, 0]), &xv).unwrap();
        assert_eq!(prod, AlgElem::basis_elem(&spec, &xv).unwrap());
    }

    #[test]
    fn reordering_picks_up_the_bracket_scalar() {
        let spec = spec2(fp(5), (2, 2), 2);
        let prod = mono_mul(&spec, &ev(&[0, 1]), &ev(&[1, 0])).unwrap();
        let expected_coeff = scalar(fp(5), 2).inv().unwrap().neg();
        assert_eq!(prod.coeff(&ev(&[1, 1])), expected_coeff);
        assert_eq!(prod.term_count(), 1);
    }

    #[test]
    fn defining_relations_hold() {
        for (desc, q) in [
            (FieldDescriptor::rationals(), -1),
            (fp(5), 2),
            (fp(5), 1),
        ] {
            let spec = spec2(desc, (2, 3), q);
            let n = spec.generators();
            for i in 0..n {
                for j in 0..n {
                    let xi = AlgElem::basis_elem(&spec, &ExponentVec::unit(n, i)).unwrap();
                    let xj = AlgElem::basis_elem(&spec, &ExponentVec::unit(n, j)).unwrap();
                    let lhs = xi
                        .mul(&xj)
                        .unwrap()
                        .add(
                            &xj.mul(&xi)
                                .unwrap()
                                .scale(spec.q_matrix().entry(i, j))
                                .unwrap(),
                        )
                        .unwrap();
                    assert!(lhs.is_zero(), "relation fails at ({i},{j}) for q={q}");
                }
            }
            // x_i^{a_i} = 0.
            for i in 0..n {
                let xi = AlgElem::basis_elem(&spec, &ExponentVec::unit(n, i)).unwrap();
                let mut acc = AlgElem::unit(&spec);
                for _ in 0..spec.bounds()[i] {
                    acc = acc.mul(&xi).unwrap();
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn element_products_extend_bilinearly() {
        let spec = spec2(FieldDescriptor::rationals(), (2, 2), -1);
        let x1 = AlgElem::basis_elem(&spec, &ev(&[1, 0])).unwrap();
        let x2 = AlgElem::basis_elem(&spec, &ev(&[0, 1])).unwrap();
        let sum = x1.add(&x2).unwrap();
        assert_eq!(sum.mul(&AlgElem::unit(&spec)).unwrap(), sum);

        let x1x2 = x1.mul(&x2).unwrap();
        assert!(x1x2.mul(&x1).unwrap().is_zero());
    }

    #[test]
    fn counit_values() {
        let spec = spec2(FieldDescriptor::rationals(), (2, 3), -1);
        assert!(spec.counit_value(&ev(&[0, 0])).is_one());
        assert!(spec.counit_value(&ev(&[1, 0])).is_zero());
        assert!(spec.counit_value(&spec.top()).is_zero());
    }

    #[test]
    fn frobenius_functional_examples() {
        let spec = spec2(fp(5), (2, 2), 1);
        let top = spec.top();
        let phi_top = AlgElem::basis_elem(&spec, &top).unwrap();
        assert!(is_frobenius_functional(&phi_top).unwrap().nondegenerate);

        let phi_unit = AlgElem::unit(&spec);
        assert!(!is_frobenius_functional(&phi_unit).unwrap().nondegenerate);

        let phi_sum = phi_top.add(&phi_unit).unwrap();
        assert!(is_frobenius_functional(&phi_sum).unwrap().nondegenerate);
    }

    #[test]
    fn frobenius_functional_rank_agrees_with_closed_form_exhaustively() {
        // All subset-supported functionals on a six-dimensional algebra.
        let spec = spec2(fp(5), (2, 3), -1);
        let basis = spec.basis();
        for mask in 0u32..(1 << basis.len()) {
            let terms: Vec<_> = basis
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, v)| (v.clone(), FieldScalar::one(fp(5))))
                .collect();
            let phi = AlgElem::from_terms(&spec, terms).unwrap();
            // is_frobenius_functional errors out if the two criteria split.
            let report = is_frobenius_functional(&phi).unwrap();
            assert_eq!(
                report.nondegenerate,
                !phi.coeff(&spec.top()).is_zero(),
                "mask {mask}"
            );
        }
    }

    #[test]
    fn integral_spaces_are_spanned_by_the_top_monomial() {
        for (desc, a, q) in [
            (fp(5), (2, 2), 1),
            (FieldDescriptor::rationals(), (3, 3), -1),
            (FieldDescriptor::gaussian_rationals(), (2, 3), 1),
        ] {
            let spec = spec2(desc, a, q);
            let spaces = integral_spaces(&spec).unwrap();
            let top = AlgElem::basis_elem(&spec, &spec.top()).unwrap();
            assert_eq!(spaces.right, vec![top.clone()]);
            assert_eq!(spaces.left, vec![top]);
            assert!(spaces.unimodular);
        }
    }

    #[test]
    fn symmetry_criterion_examples() {
        // q = -1 everywhere: every factor is 1.
        let spec = spec2(FieldDescriptor::rationals(), (2, 2), -1);
        assert!(symmetric_criterion(&spec).symmetric);

        // a = (2,2), q_{12} = 1: the j = 1 factor is -1.
        let spec = spec2(fp(5), (2, 2), 1);
        let crit = symmetric_criterion(&spec);
        assert!(!crit.symmetric);
        assert_eq!(crit.factors[0], FieldScalar::minus_one(fp(5)));

        // a = (3,3), q_{12} = 1: even exponents square everything away.
        let spec = spec2(fp(5), (3, 3), 1);
        assert!(symmetric_criterion(&spec).symmetric);
    }

    #[test]
    fn symmetry_criterion_matches_brute_force_form_symmetry() {
        // Oracle: phi = (x_top)^*; the criterion holds iff phi(xy) = phi(yx)
        // for all basis pairs.
        for (a, q) in [((2, 2), 1), ((2, 2), -1), ((3, 3), 1), ((2, 3), 1)] {
            let spec = spec2(fp(5), a, q);
            let phi = AlgElem::basis_elem(&spec, &spec.top()).unwrap();
            let basis = spec.basis();
            let mut form_symmetric = true;
            for u in &basis {
                for v in &basis {
                    let xy = mono_mul(&spec, u, v).unwrap();
                    let yx = mono_mul(&spec, v, u).unwrap();
                    if phi.pair_dual(&xy).unwrap() != phi.pair_dual(&yx).unwrap() {
                        form_symmetric = false;
                    }
                }
            }
            assert_eq!(
                symmetric_criterion(&spec).symmetric,
                form_symmetric,
                "a={a:?} q={q}"
            );
        }
    }

    #[test]
    fn element_rendering_is_canonical() {
        let spec = spec2(FieldDescriptor::rationals(), (2, 3), -1);
        let e = AlgElem::from_terms(
            &spec,
            [
                (ev(&[0, 0]), FieldScalar::one(FieldDescriptor::rationals())),
                (ev(&[0, 2]), FieldScalar::one(FieldDescriptor::rationals())),
            ],
        )
        .unwrap();
        assert_eq!(e.to_string(), "1 + x2^2");

        let e = AlgElem::from_terms(
            &spec,
            [(
                ev(&[1, 2]),
                FieldScalar::from_integer(FieldDescriptor::rationals(), -3),
            )],
        )
        .unwrap();
        assert_eq!(e.to_string(), "-3 x1 x2^2");
        assert_eq!(AlgElem::zero(&spec).to_string(), "0");
    }
}
