use super::HomError;
use crate::algebra::{RationalFunction, Var};
use crate::chart::invert;

/// Structure constants `[e_i, e_j] = C^k_{ij} e_k`, possibly depending on
/// parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraSpec {
    names: Vec<String>,
    /// `brackets[i][j][k] = C^k_{ij}`
    brackets: Vec<Vec<Vec<RationalFunction>>>,
}

impl LieAlgebraSpec {
    /// Builds the algebra from the listed brackets; unlisted brackets of basis
    /// elements vanish. Each unordered pair may be given once, in either order.
    pub fn new(names: Vec<String>, entries: Vec<(usize, usize, Vec<RationalFunction>)>) -> Result<Self, HomError> {
        let n = names.len();
        let zero = vec![RationalFunction::zero(); n];
        let mut brackets = vec![vec![zero.clone(); n]; n];
        let mut given = vec![vec![false; n]; n];
        for (i, j, v) in entries {
            if v.len() != n || i >= n || j >= n {
                return Err(HomError::Dimension(format!("bracket entry ({i},{j}) out of range")));
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(HomError::SelfBracket(names[i].clone()));
                }
                continue;
            }
            let neg: Vec<RationalFunction> = v.iter().map(|c| -c.clone()).collect();
            if given[i][j] && brackets[i][j] != v {
                return Err(HomError::Antisymmetry(names[i].clone(), names[j].clone()));
            }
            given[i][j] = true;
            given[j][i] = true;
            brackets[i][j] = v;
            brackets[j][i] = neg;
        }
        Ok(LieAlgebraSpec { names, brackets })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `[e_i, e_j]` in the basis.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[RationalFunction] {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, x: &[RationalFunction], y: &[RationalFunction]) -> Vec<RationalFunction> {
        let n = self.dim();
        let mut out = vec![RationalFunction::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                for (o, b) in out.iter_mut().zip(&self.brackets[i][j]) {
                    if !b.is_zero() {
                        *o = &*o + &(&c * b);
                    }
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<RationalFunction> {
        let mut v = vec![RationalFunction::zero(); self.dim()];
        v[i] = RationalFunction::one();
        v
    }

    /// First basis triple violating Jacobi, with the residual
    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize, Vec<RationalFunction>)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    let r: Vec<RationalFunction> = a.iter().zip(&b).zip(&c).map(|((p, q), s)| &(p + q) + s).collect();
                    if r.iter().any(|e| !e.is_zero()) {
                        return Some((i, j, k, r));
                    }
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<(), HomError> {
        match self.jacobi_witness() {
            None => Ok(()),
            Some((i, j, k, _)) => Err(HomError::Jacobi(
                self.names[i].clone(),
                self.names[j].clone(),
                self.names[k].clone(),
            )),
        }
    }

    pub fn substitute(&self, v: Var, value: &RationalFunction) -> Result<Self, HomError> {
        let brackets = self
            .brackets
            .iter()
            .map(|row| {
                row.iter()
                    .map(|b| b.iter().map(|c| c.substitute(v, value)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LieAlgebraSpec {
            names: self.names.clone(),
            brackets,
        })
    }
}

/// A split 𝔤 = 𝔥 ⊕ 𝔪 given by explicit vectors, with the algebra rewritten in
/// the adapted basis `h_1..h_r, u_1..u_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    adapted: LieAlgebraSpec,
    r: usize,
    reductive: bool,
}

impl Decomposition {
    pub fn new(
        spec: &LieAlgebraSpec,
        h: Vec<(String, Vec<RationalFunction>)>,
        m: Vec<(String, Vec<RationalFunction>)>,
    ) -> Result<Self, HomError> {
        let dim = spec.dim();
        if h.len() + m.len() != dim || h.iter().chain(&m).any(|(_, v)| v.len() != dim) {
            return Err(HomError::NotABasis);
        }
        let r = h.len();
        let vecs: Vec<&Vec<RationalFunction>> = h.iter().chain(&m).map(|(_, v)| v).collect();
        // columns are the new basis vectors in old coordinates
        let basis: Vec<Vec<RationalFunction>> = (0..dim)
            .map(|row| vecs.iter().map(|v| v[row].clone()).collect())
            .collect();
        let (to_new, _) = invert(&basis).ok_or(HomError::NotABasis)?;
        let coords = |v: &[RationalFunction]| -> Vec<RationalFunction> {
            (0..dim)
                .map(|i| {
                    v.iter()
                        .enumerate()
                        .filter(|(k, c)| !c.is_zero() && !to_new[i][*k].is_zero())
                        .map(|(k, c)| &to_new[i][k] * c)
                        .sum()
                })
                .collect()
        };
        let names: Vec<String> = h.iter().chain(&m).map(|(n, _)| n.clone()).collect();
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let b = coords(&spec.bracket(vecs[i], vecs[j]));
                if b.iter().any(|c| !c.is_zero()) {
                    entries.push((i, j, b));
                }
            }
        }
        let adapted = LieAlgebraSpec::new(names, entries)?;
        for a in 0..r {
            for b in a + 1..r {
                if adapted.basis_bracket(a, b)[r..].iter().any(|c| !c.is_zero()) {
                    return Err(HomError::NotSubalgebra(
                        adapted.names[a].clone(),
                        adapted.names[b].clone(),
                    ));
                }
            }
        }
        let reductive =
            (0..r).all(|a| (r..dim).all(|j| adapted.basis_bracket(a, j)[..r].iter().all(RationalFunction::is_zero)));
        Ok(Decomposition { adapted, r, reductive })
    }

    /// Identity split with the first `r` basis vectors spanning 𝔥.
    pub fn standard(spec: &LieAlgebraSpec, r: usize) -> Result<Self, HomError> {
        let names = spec.names();
        let h = (0..r).map(|i| (names[i].clone(), spec.unit(i))).collect();
        let m = (r..spec.dim()).map(|i| (names[i].clone(), spec.unit(i))).collect();
        Self::new(spec, h, m)
    }

    pub fn algebra(&self) -> &LieAlgebraSpec {
        &self.adapted
    }

    pub fn isotropy_dim(&self) -> usize {
        self.r
    }

    pub fn m_dim(&self) -> usize {
        self.adapted.dim() - self.r
    }

    pub fn is_reductive(&self) -> bool {
        self.reductive
    }

    pub fn h_names(&self) -> &[String] {
        &self.adapted.names()[..self.r]
    }

    pub fn m_names(&self) -> &[String] {
        &self.adapted.names()[self.r..]
    }

    /// `[x, y]` for adapted basis indices, split into (𝔥-part, 𝔪-part).
    pub fn split_bracket(&self, i: usize, j: usize) -> (Vec<RationalFunction>, Vec<RationalFunction>) {
        let b = self.adapted.basis_bracket(i, j);
        (b[..self.r].to_vec(), b[self.r..].to_vec())
    }

    pub fn substitute(&self, v: Var, value: &RationalFunction) -> Result<Self, HomError> {
        Ok(Decomposition {
            adapted: self.adapted.substitute(v, value)?,
            r: self.r,
            reductive: self.reductive,
        })
    }
}
