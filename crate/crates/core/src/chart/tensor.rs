use std::collections::BTreeMap;

use crate::algebra::{AlgebraError, Rational, RationalFunction, Var};

/// Dense tensor of valence (upper, lower) over an n-dimensional chart.
///
/// Components are stored row-major with the contravariant slots first, so the
/// (1,3) curvature tensor `R^i_{jkl}` lives at multi-index `[i, j, k, l]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorField {
    dim: usize,
    upper: usize,
    lower: usize,
    comps: Vec<RationalFunction>,
}

impl TensorField {
    pub fn zeros(dim: usize, upper: usize, lower: usize) -> Self {
        let len = dim.pow((upper + lower) as u32);
        TensorField {
            dim,
            upper,
            lower,
            comps: vec![RationalFunction::zero(); len],
        }
    }

    pub fn from_components(
        dim: usize,
        upper: usize,
        lower: usize,
        comps: Vec<RationalFunction>,
    ) -> Result<Self, AlgebraError> {
        let len = dim.pow((upper + lower) as u32);
        if comps.len() != len {
            return Err(AlgebraError::Dimension(format!(
                "valence ({upper},{lower}) in dimension {dim} needs {len} components, got {}",
                comps.len()
            )));
        }
        Ok(TensorField {
            dim,
            upper,
            lower,
            comps,
        })
    }

    /// Builds a (0,2) or (2,0) tensor from a square matrix.
    pub fn from_matrix(m: &[Vec<RationalFunction>], upper: usize) -> Self {
        let n = m.len();
        let comps = m.iter().flat_map(|row| row.iter().cloned()).collect();
        TensorField {
            dim: n,
            upper,
            lower: 2 - upper,
            comps,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn rank(&self) -> usize {
        self.upper + self.lower
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.comps
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn multi_index(&self, mut offset: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank()];
        for slot in idx.iter_mut().rev() {
            *slot = offset % self.dim;
            offset /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &RationalFunction {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: RationalFunction) {
        let o = self.offset(idx);
        self.comps[o] = value;
    }

    pub fn add_at(&mut self, idx: &[usize], value: &RationalFunction) {
        if value.is_zero() {
            return;
        }
        let o = self.offset(idx);
        self.comps[o] = &self.comps[o] + value;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RationalFunction::is_zero)
    }

    /// Nonzero components with their multi-indices, in storage order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &RationalFunction)> + '_ {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(o, c)| (self.multi_index(o), c))
    }

    pub fn first_nonzero(&self) -> Option<(Vec<usize>, &RationalFunction)> {
        self.nonzero().next()
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        TensorField {
            dim: self.dim,
            upper: self.upper,
            lower: self.lower,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&RationalFunction) -> Result<RationalFunction, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        Ok(TensorField {
            dim: self.dim,
            upper: self.upper,
            lower: self.lower,
            comps: self.comps.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    fn same_shape(&self, other: &Self) {
        assert!(
            self.dim == other.dim && self.upper == other.upper && self.lower == other.lower,
            "tensor shape mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        self.with_components(comps)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_shape(other);
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        self.with_components(comps)
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        self.map(|c| if c.is_zero() { c.clone() } else { c * f })
    }

    fn with_components(&self, comps: Vec<RationalFunction>) -> Self {
        TensorField {
            dim: self.dim,
            upper: self.upper,
            lower: self.lower,
            comps,
        }
    }

    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Vec<Rational>, AlgebraError> {
        self.comps.iter().map(|c| c.eval(point)).collect()
    }

    pub fn partial_eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Self, AlgebraError> {
        self.try_map(|c| c.partial_eval(point))
    }

    pub fn substitute(&self, v: Var, value: &RationalFunction) -> Result<Self, AlgebraError> {
        self.try_map(|c| c.substitute(v, value))
    }

    /// Square-matrix view of a rank-2 tensor.
    pub fn to_matrix(&self) -> Vec<Vec<RationalFunction>> {
        assert_eq!(self.rank(), 2);
        self.comps.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Every multi-index of the given rank in storage order.
    pub fn indices(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
        let total = dim.pow(rank as u32);
        (0..total).map(move |mut o| {
            let mut idx = vec![0; rank];
            for slot in idx.iter_mut().rev() {
                *slot = o % dim;
                o /= dim;
            }
            idx
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub comps: Vec<RationalFunction>,
}

impl VectorField {
    pub fn new(comps: Vec<RationalFunction>) -> Self {
        VectorField { comps }
    }

    pub fn zero(dim: usize) -> Self {
        VectorField {
            comps: vec![RationalFunction::zero(); dim],
        }
    }

    /// The coordinate field ∂_i.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.comps[i] = RationalFunction::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn as_tensor(&self) -> TensorField {
        TensorField::from_components(self.dim(), 1, 0, self.comps.clone()).expect("length matches dimension")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField(pub RationalFunction);
