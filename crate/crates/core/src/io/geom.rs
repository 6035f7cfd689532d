//! Line-oriented geometry files.
//!
//! ```text
//! # comment
//! [chart]            coordinate names
//! [params]           parameter names
//! [assume]           one nonzero parameter polynomial per line
//! [metric]           i j = expr          (1-based; either triangle)
//! [vector V]         i = expr
//! [scalar f]         expr
//! [structure T]      k i j = expr        (T_{∂i} ∂j = T^k_ij ∂k)
//! [basis]            Lie algebra basis names
//! [algebra]          [x,y] = linear combination of basis names
//! [decomposition]    h name = combination | m name = combination
//! [substitute]       name = expr         (applied after validation)
//! ```
//!
//! A file describes either a chart metric (`[chart]`) or a Lie algebra
//! (`[basis]`); for the latter `[metric]` indices refer to the 𝔪-basis.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{parse_with, InputError, ParseError};
use crate::algebra::{Context, RationalFunction, SymbolKind, Var};
use crate::chart::{Chart, MetricField, ScalarField, TensorField, VectorField};
use crate::homog::{Decomposition, LieAlgebraSpec, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometryKind {
    ChartMetric,
    LieAlgebra,
}

type Combo = Vec<RationalFunction>;

#[derive(Clone, Debug)]
pub struct GeometryFile {
    ctx: Arc<Context>,
    pub kind: GeometryKind,
    pub coords: Vec<String>,
    pub params: Vec<String>,
    pub assumptions: Vec<RationalFunction>,
    /// Upper-triangle entries, 0-based.
    pub metric: BTreeMap<(usize, usize), RationalFunction>,
    pub vectors: Vec<(String, BTreeMap<usize, RationalFunction>)>,
    pub scalars: Vec<(String, RationalFunction)>,
    pub structures: Vec<(String, BTreeMap<(usize, usize, usize), RationalFunction>)>,
    pub basis: Vec<String>,
    /// `(i, j, [e_i, e_j])` with `i < j`.
    pub brackets: BTreeMap<(usize, usize), Combo>,
    pub isotropy: Vec<(String, Combo)>,
    pub complement: Vec<(String, Combo)>,
    pub substitutions: Vec<(Var, RationalFunction)>,
}

impl PartialEq for GeometryFile {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind
            && self.coords == o.coords
            && self.params == o.params
            && self.assumptions == o.assumptions
            && self.metric == o.metric
            && self.vectors == o.vectors
            && self.scalars == o.scalars
            && self.structures == o.structures
            && self.basis == o.basis
            && self.brackets == o.brackets
            && self.isotropy == o.isotropy
            && self.complement == o.complement
            && self.substitutions == o.substitutions
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
    /// 1-based column of `text[0]`
    col: usize,
}

fn err(line: &Line, msg: impl Into<String>) -> ParseError {
    ParseError::new(line.no, line.col, msg)
}

/// Splits `lhs = rhs`, returning the rhs with its column.
fn split_eq<'a>(line: &Line<'a>) -> Result<(&'a str, &'a str, usize), ParseError> {
    let pos = line.text.find('=').ok_or_else(|| err(line, "expected `=`"))?;
    let rhs = &line.text[pos + 1..];
    let skipped = rhs.len() - rhs.trim_start().len();
    let col = line.col + line.text[..pos + 1].chars().count() + rhs[..skipped].chars().count();
    Ok((line.text[..pos].trim(), rhs.trim(), col))
}

fn parse_indices(line: &Line, lhs: &str, count: usize, bound: usize) -> Result<Vec<usize>, ParseError> {
    let parts: Vec<&str> = lhs.split_whitespace().collect();
    if parts.len() != count {
        return Err(err(line, format!("expected {count} indices before `=`")));
    }
    parts
        .iter()
        .map(|p| match p.parse::<usize>() {
            Ok(i) if (1..=bound).contains(&i) => Ok(i - 1),
            Ok(i) => Err(err(line, format!("index {i} out of range 1..{bound}"))),
            Err(_) => Err(err(line, format!("bad index `{p}`"))),
        })
        .collect()
}

fn names_of(line: &Line) -> Vec<String> {
    line.text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Chart,
    Params,
    Assume,
    Metric,
    Vector(usize),
    Scalar(usize),
    Structure(usize),
    Basis,
    Algebra,
    Decomposition,
    Substitute,
}

impl GeometryFile {
    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let ctx = Context::new();
        let mut f = GeometryFile {
            ctx: ctx.clone(),
            kind: GeometryKind::ChartMetric,
            coords: Vec::new(),
            params: Vec::new(),
            assumptions: Vec::new(),
            metric: BTreeMap::new(),
            vectors: Vec::new(),
            scalars: Vec::new(),
            structures: Vec::new(),
            basis: Vec::new(),
            brackets: BTreeMap::new(),
            isotropy: Vec::new(),
            complement: Vec::new(),
            substitutions: Vec::new(),
        };
        let mut section: Option<Section> = None;
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut declared: BTreeSet<String> = BTreeSet::new();
        let mut any = false;
        for (no, raw) in text.lines().enumerate() {
            let no = no + 1;
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let col = 1 + body[..body.len() - trimmed.len()].chars().count();
            let line = Line {
                no,
                text: trimmed.trim_end(),
                col,
            };
            if line.text.is_empty() {
                continue;
            }
            any = true;
            if line.text.starts_with('[') && !line.text.contains('=') {
                let inner = line
                    .text
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| err(&line, "malformed section header"))?;
                let mut words = inner.split_whitespace();
                let head = words.next().unwrap_or("");
                let arg = words.next().map(str::to_string);
                if words.next().is_some() {
                    return Err(err(&line, "section header takes at most one name"));
                }
                let key = match &arg {
                    Some(a) => format!("{head} {a}"),
                    None => head.to_string(),
                };
                if !seen.insert(key.clone()) {
                    return Err(err(&line, format!("duplicate section [{key}]")));
                }
                let need_arg = matches!(head, "vector" | "scalar" | "structure");
                if need_arg != arg.is_some() {
                    return Err(err(
                        &line,
                        format!(
                            "section [{head}] {}",
                            if need_arg { "needs a name" } else { "takes no name" }
                        ),
                    ));
                }
                let chart_side = matches!(head, "chart" | "vector" | "scalar" | "structure");
                let alg_side = matches!(head, "basis" | "algebra" | "decomposition");
                if (chart_side && !f.basis.is_empty()) || (alg_side && !f.coords.is_empty()) {
                    return Err(err(&line, "a file describes either a chart or a Lie algebra, not both"));
                }
                let name = arg.unwrap_or_default();
                section = Some(match head {
                    "chart" => Section::Chart,
                    "params" => Section::Params,
                    "assume" => Section::Assume,
                    "metric" => Section::Metric,
                    "vector" => {
                        f.vectors.push((name, BTreeMap::new()));
                        Section::Vector(f.vectors.len() - 1)
                    }
                    "scalar" => {
                        f.scalars.push((name, RationalFunction::zero()));
                        Section::Scalar(f.scalars.len() - 1)
                    }
                    "structure" => {
                        f.structures.push((name, BTreeMap::new()));
                        Section::Structure(f.structures.len() - 1)
                    }
                    "basis" => Section::Basis,
                    "algebra" => Section::Algebra,
                    "decomposition" => Section::Decomposition,
                    "substitute" => Section::Substitute,
                    other => return Err(err(&line, format!("unknown section [{other}]"))),
                });
                continue;
            }
            let Some(sec) = section else {
                return Err(err(&line, "content before the first section header"));
            };
            let resolve = |n: &str| ctx.lookup(n).filter(|v| v.kind() != SymbolKind::Unknown);
            let resolve_basis = |n: &str| ctx.lookup(n);
            let expr = |text: &str, col: usize| parse_with(text, &resolve, no, col);
            match sec {
                Section::Chart | Section::Params | Section::Basis => {
                    if sec != Section::Params && !f.metric.is_empty() {
                        return Err(err(&line, "declarations must precede [metric]"));
                    }
                    let kind = match sec {
                        Section::Chart => SymbolKind::Coordinate,
                        Section::Params => SymbolKind::Parameter,
                        _ => SymbolKind::Unknown,
                    };
                    for n in names_of(&line) {
                        if !n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                            || !n.chars().all(|c| c.is_alphanumeric() || c == '_')
                        {
                            return Err(err(&line, format!("bad symbol name `{n}`")));
                        }
                        if !declared.insert(n.clone()) {
                            return Err(err(&line, format!("`{n}` declared twice")));
                        }
                        ctx.intern(&n, kind).map_err(|e| err(&line, e.to_string()))?;
                        match sec {
                            Section::Chart => f.coords.push(n),
                            Section::Params => f.params.push(n),
                            _ => f.basis.push(n),
                        }
                    }
                }
                Section::Assume => {
                    let e = expr(line.text, line.col)?;
                    if e.is_zero() {
                        return Err(err(&line, "assumption is identically zero"));
                    }
                    if e.vars().iter().any(|v| v.kind() == SymbolKind::Coordinate) {
                        return Err(err(&line, "assumptions may only involve parameters"));
                    }
                    f.assumptions.push(e);
                }
                Section::Metric => {
                    let (lhs, rhs, c) = split_eq(&line)?;
                    let bound = if f.basis.is_empty() {
                        f.coords.len()
                    } else {
                        // the 𝔪-dimension is known only after [decomposition]
                        f.basis.len()
                    };
                    let ix = parse_indices(&line, lhs, 2, bound)?;
                    let key = (ix[0].min(ix[1]), ix[0].max(ix[1]));
                    let e = expr(rhs, c)?;
                    if let Some(prev) = f.metric.get(&key) {
                        if *prev != e {
                            return Err(err(
                                &line,
                                format!("metric entry ({}, {}) is not symmetric", ix[0] + 1, ix[1] + 1),
                            ));
                        }
                    }
                    f.metric.insert(key, e);
                }
                Section::Vector(k) => {
                    let (lhs, rhs, c) = split_eq(&line)?;
                    let ix = parse_indices(&line, lhs, 1, f.coords.len())?;
                    let e = expr(rhs, c)?;
                    if f.vectors[k].1.insert(ix[0], e).is_some() {
                        return Err(err(&line, "component given twice"));
                    }
                }
                Section::Scalar(k) => {
                    if !f.scalars[k].1.is_zero() {
                        return Err(err(&line, "a scalar section holds one expression"));
                    }
                    let e = expr(line.text, line.col)?;
                    f.scalars[k].1 = e;
                }
                Section::Structure(k) => {
                    let (lhs, rhs, c) = split_eq(&line)?;
                    let ix = parse_indices(&line, lhs, 3, f.coords.len())?;
                    let e = expr(rhs, c)?;
                    if f.structures[k].1.insert((ix[0], ix[1], ix[2]), e).is_some() {
                        return Err(err(&line, "component given twice"));
                    }
                }
                Section::Algebra => {
                    let (lhs, rhs, c) = split_eq(&line)?;
                    let pair = lhs
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .map(|s| s.split(',').map(str::trim).collect::<Vec<_>>())
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| err(&line, "expected `[x,y] = ...`"))?;
                    let idx = |n: &str| {
                        f.basis
                            .iter()
                            .position(|b| b == n)
                            .ok_or_else(|| err(&line, format!("`{n}` is not a basis element")))
                    };
                    let (i, j) = (idx(pair[0])?, idx(pair[1])?);
                    if i == j {
                        return Err(err(&line, format!("bracket [{0},{0}] must vanish", pair[0])));
                    }
                    let mut v = combo(&ctx, &f.basis, rhs, no, c, &resolve_basis)?;
                    let key = if i < j {
                        (i, j)
                    } else {
                        v = v.into_iter().map(|e| -e).collect();
                        (j, i)
                    };
                    if f.brackets.insert(key, v).is_some() {
                        return Err(err(&line, format!("bracket [{},{}] given twice", pair[0], pair[1])));
                    }
                }
                Section::Decomposition => {
                    let (lhs, rhs, c) = split_eq(&line)?;
                    let parts: Vec<&str> = lhs.split_whitespace().collect();
                    let v = combo(&ctx, &f.basis, rhs, no, c, &resolve_basis)?;
                    match parts.as_slice() {
                        ["h", name] => f.isotropy.push((name.to_string(), v)),
                        ["m", name] => f.complement.push((name.to_string(), v)),
                        _ => return Err(err(&line, "expected `h name = ...` or `m name = ...`")),
                    }
                }
                Section::Substitute => {
                    let (lhs, rhs, c) = split_eq(&line)?;
                    let v = ctx
                        .lookup(lhs)
                        .filter(|v| v.kind() == SymbolKind::Parameter)
                        .ok_or_else(|| err(&line, format!("`{lhs}` is not a declared parameter")))?;
                    let e = expr(rhs, c)?;
                    if e.contains(v) {
                        return Err(err(&line, "substitution refers to itself"));
                    }
                    f.substitutions.push((v, e));
                }
            }
        }
        if !any {
            return Err(ParseError::new(1, 1, "empty geometry file"));
        }
        f.kind = if !f.basis.is_empty() {
            GeometryKind::LieAlgebra
        } else if !f.coords.is_empty() {
            GeometryKind::ChartMetric
        } else {
            return Err(ParseError::new(1, 1, "file declares neither [chart] nor [basis]"));
        };
        if f.kind == GeometryKind::ChartMetric && f.metric.is_empty() {
            return Err(ParseError::new(1, 1, "chart file has no [metric] section"));
        }
        if f.kind == GeometryKind::LieAlgebra {
            let n = if f.isotropy.is_empty() && f.complement.is_empty() {
                f.basis.len()
            } else {
                f.complement.len()
            };
            if let Some(&(i, j)) = f.metric.keys().find(|&&(i, j)| i.max(j) >= n) {
                return Err(ParseError::new(
                    1,
                    1,
                    format!("metric entry ({}, {}) exceeds the 𝔪-dimension {n}", i + 1, j + 1),
                ));
            }
        }
        Ok(f)
    }

    pub fn serialize(&self) -> String {
        let ctx = &self.ctx;
        let show = |e: &RationalFunction| e.display(ctx);
        let mut out = String::new();
        let mut section = |head: &str, lines: Vec<String>| {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("[{head}]\n"));
            for l in lines {
                out.push_str(&l);
                out.push('\n');
            }
        };
        if !self.coords.is_empty() {
            section("chart", vec![self.coords.join(" ")]);
        }
        if !self.basis.is_empty() {
            section("basis", vec![self.basis.join(" ")]);
        }
        if !self.params.is_empty() {
            section("params", vec![self.params.join(" ")]);
        }
        if !self.assumptions.is_empty() {
            section("assume", self.assumptions.iter().map(show).collect());
        }
        let show_combo = |v: &Combo| -> String {
            let terms: Vec<String> = v
                .iter()
                .zip(&self.basis)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, b)| {
                    if c.is_one() {
                        b.clone()
                    } else {
                        format!("({})*{b}", show(c))
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        };
        if !self.brackets.is_empty() {
            section(
                "algebra",
                self.brackets
                    .iter()
                    .map(|(&(i, j), v)| format!("[{},{}] = {}", self.basis[i], self.basis[j], show_combo(v)))
                    .collect(),
            );
        }
        if !self.isotropy.is_empty() || !self.complement.is_empty() {
            let h = self.isotropy.iter().map(|(n, v)| format!("h {n} = {}", show_combo(v)));
            let m = self
                .complement
                .iter()
                .map(|(n, v)| format!("m {n} = {}", show_combo(v)));
            section("decomposition", h.chain(m).collect());
        }
        if !self.metric.is_empty() {
            section(
                "metric",
                self.metric
                    .iter()
                    .map(|(&(i, j), e)| format!("{} {} = {}", i + 1, j + 1, show(e)))
                    .collect(),
            );
        }
        for (name, comps) in &self.vectors {
            section(
                &format!("vector {name}"),
                comps.iter().map(|(i, e)| format!("{} = {}", i + 1, show(e))).collect(),
            );
        }
        for (name, e) in &self.scalars {
            section(&format!("scalar {name}"), vec![show(e)]);
        }
        for (name, comps) in &self.structures {
            section(
                &format!("structure {name}"),
                comps
                    .iter()
                    .map(|(&(k, i, j), e)| format!("{} {} {} = {}", k + 1, i + 1, j + 1, show(e)))
                    .collect(),
            );
        }
        if !self.substitutions.is_empty() {
            section(
                "substitute",
                self.substitutions
                    .iter()
                    .map(|(v, e)| format!("{} = {}", ctx.name(*v), show(e)))
                    .collect(),
            );
        }
        out
    }

    fn substituted(&self, e: &RationalFunction) -> Result<RationalFunction, InputError> {
        let mut e = e.clone();
        for (v, value) in &self.substitutions {
            e = e.substitute(*v, value)?;
        }
        Ok(e)
    }

    fn require(&self, kind: GeometryKind) -> Result<(), InputError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(InputError::Invalid(match kind {
                GeometryKind::ChartMetric => "this operation needs a chart metric file".into(),
                GeometryKind::LieAlgebra => "this operation needs a Lie algebra file".into(),
            }))
        }
    }

    /// Chart with substitutions applied; substituted parameters are dropped.
    pub fn chart(&self) -> Result<Chart, InputError> {
        self.require(GeometryKind::ChartMetric)?;
        let sub: BTreeSet<Var> = self.substitutions.iter().map(|(v, _)| *v).collect();
        let coords = self
            .coords
            .iter()
            .map(|n| self.ctx.lookup(n).expect("declared"))
            .collect();
        let params = self
            .params
            .iter()
            .map(|n| self.ctx.lookup(n).expect("declared"))
            .filter(|v| !sub.contains(v))
            .collect();
        let mut chart = Chart::new(self.ctx.clone(), coords, params)?;
        for a in &self.assumptions {
            let a = self.substituted(a)?;
            if a.is_zero() {
                return Err(InputError::Invalid("an assumption vanishes after substitution".into()));
            }
            chart.assume_nonzero(a.numer());
        }
        Ok(chart)
    }

    fn full_metric(&self, n: usize) -> Result<Matrix, InputError> {
        let mut g = vec![vec![RationalFunction::zero(); n]; n];
        for (&(i, j), e) in &self.metric {
            let e = self.substituted(e)?;
            g[i][j] = e.clone();
            g[j][i] = e;
        }
        Ok(g)
    }

    pub fn metric_field(&self) -> Result<MetricField, InputError> {
        let chart = self.chart()?;
        let g = self.full_metric(chart.dim())?;
        Ok(MetricField::new(chart, g)?)
    }

    pub fn vector(&self, name: &str) -> Result<VectorField, InputError> {
        self.require(GeometryKind::ChartMetric)?;
        let (_, comps) = self
            .vectors
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| InputError::Invalid(format!("no [vector {name}] section")))?;
        let mut v = vec![RationalFunction::zero(); self.coords.len()];
        for (&i, e) in comps {
            v[i] = self.substituted(e)?;
        }
        Ok(VectorField::new(v))
    }

    pub fn scalar(&self, name: &str) -> Result<ScalarField, InputError> {
        let (_, e) = self
            .scalars
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| InputError::Invalid(format!("no [scalar {name}] section")))?;
        Ok(ScalarField(self.substituted(e)?))
    }

    /// `T` as a (1,2) tensor stored at `[k, i, j]`.
    pub fn structure(&self, name: &str) -> Result<TensorField, InputError> {
        self.require(GeometryKind::ChartMetric)?;
        let (_, comps) = self
            .structures
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| InputError::Invalid(format!("no [structure {name}] section")))?;
        let mut t = TensorField::zeros(self.coords.len(), 1, 2);
        for (&(k, i, j), e) in comps {
            t.set(&[k, i, j], self.substituted(e)?);
        }
        Ok(t)
    }

    /// The algebra as declared, Jacobi-checked before any substitution.
    pub fn lie_algebra_raw(&self) -> Result<LieAlgebraSpec, InputError> {
        self.require(GeometryKind::LieAlgebra)?;
        let entries = self.brackets.iter().map(|(&(i, j), v)| (i, j, v.clone())).collect();
        let spec = LieAlgebraSpec::new(self.basis.clone(), entries)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn lie_algebra(&self) -> Result<LieAlgebraSpec, InputError> {
        let mut spec = self.lie_algebra_raw()?;
        for (v, e) in &self.substitutions {
            spec = spec.substitute(*v, e)?;
        }
        Ok(spec)
    }

    fn decompose(&self, spec: &LieAlgebraSpec) -> Result<Decomposition, InputError> {
        if self.isotropy.is_empty() && self.complement.is_empty() {
            return Ok(Decomposition::standard(spec, 0)?);
        }
        Ok(Decomposition::new(
            spec,
            self.isotropy.clone(),
            self.complement.clone(),
        )?)
    }

    /// Decomposition of the declared (unsubstituted) algebra.
    pub fn decomposition_raw(&self) -> Result<Decomposition, InputError> {
        self.decompose(&self.lie_algebra_raw()?)
    }

    pub fn decomposition(&self) -> Result<Decomposition, InputError> {
        self.decompose(&self.lie_algebra()?)
    }

    /// Declared invariant metric on 𝔪 without substitutions, if any.
    pub fn hom_metric_raw(&self) -> Option<Matrix> {
        if self.metric.is_empty() || self.kind != GeometryKind::LieAlgebra {
            return None;
        }
        let n = self.m_dim();
        let mut g = vec![vec![RationalFunction::zero(); n]; n];
        for (&(i, j), e) in &self.metric {
            g[i][j] = e.clone();
            g[j][i] = e.clone();
        }
        Some(g)
    }

    pub fn hom_metric(&self) -> Result<Option<Matrix>, InputError> {
        if self.metric.is_empty() || self.kind != GeometryKind::LieAlgebra {
            return Ok(None);
        }
        self.full_metric(self.m_dim()).map(Some)
    }

    fn m_dim(&self) -> usize {
        if self.isotropy.is_empty() && self.complement.is_empty() {
            self.basis.len()
        } else {
            self.complement.len()
        }
    }

    /// Parameters appearing in the declared (unsubstituted) metric.
    pub fn metric_params(&self) -> Vec<Var> {
        let used: BTreeSet<Var> = self.metric.values().flat_map(|e| e.vars()).collect();
        self.params
            .iter()
            .filter_map(|n| self.ctx.lookup(n))
            .filter(|v| used.contains(v))
            .collect()
    }
}

/// Parses a linear combination of basis names with parameter coefficients.
fn combo<F: Fn(&str) -> Option<Var>>(
    ctx: &Context,
    basis: &[String],
    text: &str,
    line: usize,
    col: usize,
    resolve: &F,
) -> Result<Combo, ParseError> {
    let e = parse_with(text, resolve, line, col)?;
    let vars: Vec<Var> = basis.iter().map(|n| ctx.lookup(n).expect("declared")).collect();
    let bad = || ParseError::new(line, col, "expected a linear combination of basis elements");
    if !e.denom().vars().iter().all(|v| !vars.contains(v)) {
        return Err(bad());
    }
    let set: BTreeSet<Var> = vars.iter().copied().collect();
    let mut out = vec![RationalFunction::zero(); basis.len()];
    let den = RationalFunction::from_poly(e.denom().clone());
    for (m, c) in e.numer().collect_coefficients(&set) {
        match m.pairs() {
            [(v, 1)] => {
                let k = vars.iter().position(|b| b == v).expect("basis var");
                out[k] = RationalFunction::from_poly(c).checked_div(&den).map_err(|_| bad())?;
            }
            _ => return Err(bad()),
        }
    }
    Ok(out)
}
