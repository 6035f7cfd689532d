//! Linear systems over the field of rational functions.
//!
//! Rows are cleared of denominators and eliminated fraction-free (cross
//! multiplication followed by removal of the row content), so intermediate
//! entries stay polynomial. Every non-constant pivot is recorded as a
//! genericity assumption on the result.

use super::gcd::poly_gcd;
use super::poly::MultiPoly;
use super::ratfun::RationalFunction;
use super::symbol::Var;
use super::AlgebraError;

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub matrix: Vec<Vec<RationalFunction>>,
    pub rhs: Vec<RationalFunction>,
    pub unknowns: Vec<Var>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Consistent {
        particular: Vec<RationalFunction>,
        nullspace: Vec<Vec<RationalFunction>>,
        /// Polynomials divided by during elimination, assumed nonzero.
        assumptions: Vec<MultiPoly>,
    },
    Inconsistent {
        /// Index of an original equation that cannot be satisfied.
        witness_row: usize,
        /// Reduced right-hand side of the offending row (nonzero).
        residual: RationalFunction,
    },
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Solution::Consistent { .. })
    }
}

impl LinearSystem {
    pub fn new(
        matrix: Vec<Vec<RationalFunction>>,
        rhs: Vec<RationalFunction>,
        unknowns: Vec<Var>,
    ) -> Result<Self, AlgebraError> {
        let cols = unknowns.len();
        if matrix.len() != rhs.len() || matrix.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::Dimension(format!(
                "{} rows, {} right-hand sides, {} unknowns",
                matrix.len(),
                rhs.len(),
                cols
            )));
        }
        Ok(LinearSystem { matrix, rhs, unknowns })
    }

    pub fn homogeneous(matrix: Vec<Vec<RationalFunction>>, unknowns: Vec<Var>) -> Self {
        let rows = matrix.len();
        LinearSystem {
            matrix,
            rhs: vec![RationalFunction::zero(); rows],
            unknowns,
        }
    }

    fn ncols(&self) -> usize {
        self.unknowns.len()
    }

    /// Evaluates `A x - b`.
    pub fn residual(&self, x: &[RationalFunction]) -> Vec<RationalFunction> {
        self.matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                let ax: RationalFunction = row
                    .iter()
                    .zip(x)
                    .filter(|(a, v)| !a.is_zero() && !v.is_zero())
                    .map(|(a, v)| a * v)
                    .sum();
                &ax - b
            })
            .collect()
    }

    pub fn solve(&self) -> Result<Solution, AlgebraError> {
        linear_solve(self)
    }
}

/// Solves the system, returning a particular solution plus a null-space basis,
/// or an inconsistency witness.
pub fn linear_solve(sys: &LinearSystem) -> Result<Solution, AlgebraError> {
    let ncols = sys.ncols();
    // augmented polynomial rows; `origin` remembers the source equation
    let mut rows: Vec<(Vec<MultiPoly>, usize)> = Vec::new();
    for (i, (row, b)) in sys.matrix.iter().zip(&sys.rhs).enumerate() {
        let mut entries: Vec<&RationalFunction> = row.iter().collect();
        entries.push(b);
        let poly_row = clear_denominators(&entries);
        if poly_row.iter().all(MultiPoly::is_zero) {
            continue;
        }
        rows.push((poly_row, i));
    }
    rows.sort_by_key(|a| a.0.cmp_key());
    rows.dedup_by(|a, b| a.0 == b.0);

    let mut assumptions: Vec<MultiPoly> = Vec::new();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index, column)
    let mut next_row = 0;
    for col in 0..ncols {
        let candidate = (next_row..rows.len())
            .filter(|&r| !rows[r].0[col].is_zero())
            .min_by_key(|&r| pivot_cost(&rows[r].0[col]));
        let Some(pr) = candidate else { continue };
        rows.swap(next_row, pr);
        let pivot = rows[next_row].0[col].clone();
        if !pivot.is_constant() {
            let prim = pivot.primitive();
            if !assumptions.contains(&prim) {
                assumptions.push(prim);
            }
        }
        let pivot_row = rows[next_row].0.clone();
        for r in 0..rows.len() {
            if r == next_row || rows[r].0[col].is_zero() {
                continue;
            }
            let factor = rows[r].0[col].clone();
            let g = poly_gcd(&factor, &pivot);
            let (mul_self, mul_pivot) = if g.is_one() {
                (pivot.clone(), factor)
            } else {
                (
                    pivot.div_exact(&g).expect("gcd divides"),
                    factor.div_exact(&g).expect("gcd divides"),
                )
            };
            let updated: Vec<MultiPoly> = rows[r]
                .0
                .iter()
                .zip(&pivot_row)
                .map(|(e, p)| &(&mul_self * e) - &(&mul_pivot * p))
                .collect();
            rows[r].0 = remove_row_content(updated);
        }
        pivots.push((next_row, col));
        next_row += 1;
    }

    // rows below the pivots have zero coefficient part
    for (row, origin) in &rows[next_row..] {
        let b = &row[ncols];
        if !b.is_zero() {
            return Ok(Solution::Inconsistent {
                witness_row: *origin,
                residual: RationalFunction::from_poly(b.clone()),
            });
        }
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();

    let mut particular = vec![RationalFunction::zero(); ncols];
    for &(r, c) in &pivots {
        let p = RationalFunction::from_poly(rows[r].0[c].clone());
        particular[c] = RationalFunction::from_poly(rows[r].0[ncols].clone()).checked_div(&p)?;
    }
    let mut nullspace = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut v = vec![RationalFunction::zero(); ncols];
        v[f] = RationalFunction::one();
        for &(r, c) in &pivots {
            let a = &rows[r].0[f];
            if a.is_zero() {
                continue;
            }
            let p = RationalFunction::from_poly(rows[r].0[c].clone());
            v[c] = (-RationalFunction::from_poly(a.clone())).checked_div(&p)?;
        }
        nullspace.push(v);
    }

    // self-check
    if sys.residual(&particular).iter().any(|r| !r.is_zero()) {
        return Err(AlgebraError::Internal("particular solution fails its system".into()));
    }
    let hom = LinearSystem {
        matrix: sys.matrix.clone(),
        rhs: vec![RationalFunction::zero(); sys.rhs.len()],
        unknowns: sys.unknowns.clone(),
    };
    for v in &nullspace {
        if hom.residual(v).iter().any(|r| !r.is_zero()) {
            return Err(AlgebraError::Internal("null vector fails its system".into()));
        }
    }

    Ok(Solution::Consistent {
        particular,
        nullspace,
        assumptions,
    })
}

/// Reduced row-echelon form over the rational-function field, zero rows
/// dropped. Pivots are taken left to right, so the result depends only on the
/// row space and the column order.
pub fn rref(rows: &[Vec<RationalFunction>]) -> Vec<Vec<RationalFunction>> {
    let mut rows: Vec<Vec<RationalFunction>> = rows.to_vec();
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].recip().expect("pivot is nonzero");
        rows[r] = rows[r]
            .iter()
            .map(|e| if e.is_zero() { e.clone() } else { e * &inv })
            .collect();
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            let pivot_row = rows[r].clone();
            for (e, p) in rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e = &*e - &(&f * p);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Canonical presentation of the affine space `particular + span(nullspace)`:
/// the null basis in reduced row-echelon form and the particular solution
/// zeroed on its pivot columns.
pub fn canonical_affine(
    particular: &[RationalFunction],
    nullspace: &[Vec<RationalFunction>],
) -> (Vec<RationalFunction>, Vec<Vec<RationalFunction>>) {
    let basis = rref(nullspace);
    let p = reduce_against(particular, &basis);
    (p, basis)
}

/// Subtracts from `v` its components along an RREF basis, leaving zeros on the
/// pivot columns. `v` lies in the span iff the result is zero.
pub fn reduce_against(v: &[RationalFunction], basis: &[Vec<RationalFunction>]) -> Vec<RationalFunction> {
    let mut v = v.to_vec();
    for row in basis {
        let Some(col) = row.iter().position(|e| !e.is_zero()) else {
            continue;
        };
        if v[col].is_zero() {
            continue;
        }
        let f = v[col].clone();
        for (e, b) in v.iter_mut().zip(row) {
            if !b.is_zero() {
                *e = &*e - &(&f * b);
            }
        }
    }
    v
}

fn pivot_cost(p: &MultiPoly) -> (bool, u32, usize) {
    (!p.is_constant(), p.total_degree(), p.num_terms())
}

trait RowKey {
    fn cmp_key(&self) -> (usize, usize);
}

impl RowKey for Vec<MultiPoly> {
    // sparse rows first keeps early pivots cheap
    fn cmp_key(&self) -> (usize, usize) {
        let nnz = self.iter().filter(|p| !p.is_zero()).count();
        let terms = self.iter().map(MultiPoly::num_terms).sum();
        (nnz, terms)
    }
}

/// Multiplies a row of rational functions by the lcm of its denominators and
/// strips the polynomial content.
fn clear_denominators(entries: &[&RationalFunction]) -> Vec<MultiPoly> {
    let mut lcm = MultiPoly::one();
    for e in entries {
        let d = e.denom();
        if d.is_one() {
            continue;
        }
        let g = poly_gcd(&lcm, d);
        lcm = &lcm * &d.div_exact(&g).expect("gcd divides");
    }
    let row: Vec<MultiPoly> = entries
        .iter()
        .map(|e| {
            if e.is_zero() {
                MultiPoly::zero()
            } else {
                let k = lcm.div_exact(e.denom()).expect("lcm is a multiple");
                &k * e.numer()
            }
        })
        .collect();
    remove_row_content(row)
}

fn remove_row_content(row: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut g = MultiPoly::zero();
    for e in &row {
        if e.is_zero() {
            continue;
        }
        g = poly_gcd(&g, e);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return row;
    }
    if g.is_one() {
        return row;
    }
    row.into_iter()
        .map(|e| e.div_exact(&g).expect("content divides"))
        .collect()
}
