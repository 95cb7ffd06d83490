//! Invariant blocks `S^{m,n}` and their exact operator matrices.

use std::fmt;

use nalgebra::SymmetricEigen;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::roots::{real_root_signature, Signature};
use crate::exact::{char_poly, Poly, QSqrt2, SymMatrix};
use crate::operators::{dstar_term, jacobi_apply, jp_coefficients_f64, OperatorKind};
use crate::torus::{FrameIndex, Kind, Monomial, Section, Target, TrigPoly};

/// Zero threshold for floating-point eigenvalues, relative to the largest entry.
pub const FLOAT_ZERO_TOL: f64 = 1e-8;

/// Human-readable statement of the basis ordering used for every block matrix.
pub const BASIS_ORDERING: &str = "frame-major: V_gamma, V_theta, V_nu, V_eta (V_eta only for I2); \
within each frame the nonvanishing members of cc, cs, sc, ss in that order, where \
cc=cos(m g)cos(n t), cs=cos(m g)sin(n t), sc=sin(m g)cos(n t), ss=sin(m g)sin(n t); \
entries are (Op e_i, e_j)/(|e_i||e_j|)";

/// The invariant subspace `S^{m,n}` of one operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockLabel {
    pub m: u32,
    pub n: u32,
    pub op: OperatorKind,
}

impl BlockLabel {
    pub fn new(m: u32, n: u32, op: OperatorKind) -> Self {
        Self { m, n, op }
    }

    /// Nonvanishing trigonometric monomials spanning `W^{m,n}`.
    pub fn functions(&self) -> Vec<Monomial> {
        [Kind::Cc, Kind::Cs, Kind::Sc, Kind::Ss]
            .into_iter()
            .map(|k| Monomial::new(k, self.m, self.n))
            .filter(Monomial::is_nonvanishing)
            .collect()
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        let fns = self.functions();
        self.op
            .target()
            .frames()
            .iter()
            .flat_map(|&frame| fns.iter().map(move |&f| BasisElement { function: f, frame }))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.functions().len() * self.op.target().rank()
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on S^({},{})", self.op, self.m, self.n)
    }
}

/// A basis section `function · frame` (before normalisation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub function: Monomial,
    pub frame: FrameIndex,
}

impl BasisElement {
    pub fn section(&self, target: Target) -> Result<Section> {
        Section::along(target, self.frame, TrigPoly::monomial(self.function, QSqrt2::from_int(1)))
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}", self.function, self.frame.name())
    }
}

/// An assembled block with its exact spectral data.
#[derive(Debug, Clone)]
pub struct Block {
    pub label: BlockLabel,
    pub basis: Vec<BasisElement>,
    pub matrix: SymMatrix,
    /// Characteristic polynomials of the connected components of `matrix`.
    pub component_polys: Vec<Poly>,
    pub char_poly: Poly,
    pub signature: Signature,
}

/// Matrix of a linear map on `S^{m,n}`, read off from coefficients.
///
/// The basis is orthogonal with equal norms, so `(A e_i, e_j)/(|e_i||e_j|)` is
/// exactly the coefficient of `e_j` in `A e_i`. Any output outside the block
/// violates invariance and is reported.
pub(crate) fn assemble(
    label: &BlockLabel,
    target: Target,
    apply: impl Fn(&Section) -> Result<Section>,
) -> Result<Vec<Vec<QSqrt2>>> {
    let basis = label.basis();
    let mut rows = Vec::with_capacity(basis.len());
    for e in &basis {
        let image = apply(&e.section(target)?)?;
        let row: Vec<QSqrt2> = basis
            .iter()
            .map(|b| image.comp(b.frame).coeff(&b.function))
            .collect();
        let rebuilt = basis
            .iter()
            .zip(&row)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| b.section(target).map(|s| s.scale(c)))
            .try_fold(Section::zero(target), |acc, s| s.map(|s| &acc + &s))?;
        if rebuilt != image {
            return Err(Error::Inconsistency(format!(
                "{label}: image of {e} leaves the block: {image}"
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Exact matrix of an operator on one block.
pub fn block_matrix(label: &BlockLabel) -> Result<SymMatrix> {
    if let OperatorKind::Jp { p } = label.op {
        if p.fract() != 0.0 {
            return Err(Error::ExactModeUnavailable(p));
        }
    }
    let op = label.op;
    SymMatrix::from_rows(assemble(label, op.target(), |v| op.apply(v))?)
}

/// Matrix, characteristic polynomial and certified signature of one block.
pub fn block(label: &BlockLabel) -> Result<Block> {
    let matrix = block_matrix(label)?;
    let component_polys = matrix
        .components()
        .iter()
        .map(|c| char_poly(&matrix.principal(c)))
        .collect::<Result<Vec<_>>>()?;
    let char_poly = component_polys.iter().fold(Poly::from_ints(&[1]), |a, p| &a * p);
    // Components frequently share a characteristic polynomial; count roots once per distinct one.
    let mut seen: Vec<(&Poly, Signature)> = Vec::new();
    let mut signature = Signature::default();
    for p in &component_polys {
        let s = match seen.iter().find(|(q, _)| *q == p) {
            Some((_, s)) => *s,
            None => {
                let s = real_root_signature(p)?;
                seen.push((p, s));
                s
            }
        };
        signature = signature + s;
    }
    Ok(Block {
        label: *label,
        basis: label.basis(),
        matrix,
        component_polys,
        char_poly,
        signature,
    })
}

pub fn block_signature(label: &BlockLabel) -> Result<Signature> {
    Ok(block(label)?.signature)
}

/// Signature of a symmetric float matrix with a relative zero threshold.
pub fn float_signature(m: &nalgebra::DMatrix<f64>) -> Signature {
    let scale = m.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let tol = FLOAT_ZERO_TOL * scale;
    let eig = SymmetricEigen::new(m.clone()).eigenvalues;
    let mut s = Signature::default();
    for &l in eig.iter() {
        if l.abs() <= tol {
            s.zero += 1;
        } else if l < 0.0 {
            s.neg += 1;
        } else {
            s.pos += 1;
        }
    }
    s
}

/// Float matrix of `J_p` on an `S3` block, for any real `p ≥ 1`, assembled from
/// the exact matrices of the `d*` term and of `J`.
pub fn jp_float_matrix(p: f64, m: u32, n: u32) -> Result<nalgebra::DMatrix<f64>> {
    let (a, b) = jp_coefficients_f64(p)?;
    let label = BlockLabel::new(m, n, OperatorKind::J);
    let d = SymMatrix::from_rows(assemble(&label, Target::S3, dstar_term)?)?.to_f64();
    let j = SymMatrix::from_rows(assemble(&label, Target::S3, jacobi_apply)?)?.to_f64();
    Ok(d * a + j * b)
}
