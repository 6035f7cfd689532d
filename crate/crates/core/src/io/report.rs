use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{Context, MultiPoly, RationalFunction};
use crate::chart::TensorField;
use crate::props::ConditionSet;

/// One nonzero component; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub indices: Vec<usize>,
    pub num: String,
    pub den: String,
    #[serde(skip)]
    text: String,
}

impl Component {
    fn new(indices: Vec<usize>, f: &RationalFunction, ctx: &Context) -> Self {
        Component {
            indices: indices.into_iter().map(|i| i + 1).collect(),
            num: f.numer().display(ctx),
            den: f.denom().display(ctx),
            text: f.display(ctx),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Item {
    Text {
        value: String,
    },
    Flag {
        value: bool,
    },
    Integer {
        value: i64,
    },
    Expression {
        num: String,
        den: String,
        #[serde(skip)]
        text: String,
    },
    Tensor {
        upper: usize,
        lower: usize,
        dim: usize,
        components: Vec<Component>,
    },
    Matrix {
        size: usize,
        components: Vec<Component>,
    },
    Conditions {
        generators: Vec<String>,
        raw_count: usize,
        assumptions: Vec<String>,
    },
    List {
        values: Vec<String>,
    },
}

impl Item {
    pub fn text(s: impl Into<String>) -> Self {
        Item::Text { value: s.into() }
    }

    pub fn expression(f: &RationalFunction, ctx: &Context) -> Self {
        Item::Expression {
            num: f.numer().display(ctx),
            den: f.denom().display(ctx),
            text: f.display(ctx),
        }
    }

    pub fn tensor(t: &TensorField, ctx: &Context) -> Self {
        Item::Tensor {
            upper: t.upper(),
            lower: t.lower(),
            dim: t.dim(),
            components: t.nonzero().map(|(i, c)| Component::new(i, c, ctx)).collect(),
        }
    }

    pub fn matrix(m: &[Vec<RationalFunction>], ctx: &Context) -> Self {
        let mut components = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    components.push(Component::new(vec![i, j], c, ctx));
                }
            }
        }
        Item::Matrix {
            size: m.len(),
            components,
        }
    }

    pub fn conditions(c: &ConditionSet, ctx: &Context) -> Self {
        Item::Conditions {
            generators: c.display(ctx),
            raw_count: c.raw.iter().filter(|p| !p.is_zero()).count(),
            assumptions: c.assumptions.iter().map(|a| a.display(ctx)).collect(),
        }
    }
}

/// Deterministic record of one computation. No timing or environment data is
/// included, so identical inputs give byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub computation: String,
    pub input_digest: String,
    pub assumptions: Vec<String>,
    pub results: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    #[serde(flatten)]
    pub item: Item,
}

impl Report {
    pub fn new(computation: impl Into<String>, input: &str) -> Self {
        let digest = Sha256::digest(input.as_bytes());
        Report {
            computation: computation.into(),
            input_digest: format!("sha256:{digest:x}"),
            assumptions: Vec::new(),
            results: Vec::new(),
        }
    }

    pub fn assume(&mut self, polys: &[MultiPoly], ctx: &Context) {
        for p in polys {
            let s = p.display(ctx);
            if !self.assumptions.contains(&s) {
                self.assumptions.push(s);
            }
        }
    }

    pub fn push(&mut self, name: impl Into<String>, item: Item) {
        self.results.push(Entry {
            name: name.into(),
            item,
        });
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.results.iter().find(|e| e.name == name).map(|e| &e.item)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "computation: {}", self.computation);
        let _ = writeln!(out, "input: {}", self.input_digest);
        if !self.assumptions.is_empty() {
            let _ = writeln!(out, "assuming nonzero: {}", self.assumptions.join(", "));
        }
        for e in &self.results {
            match &e.item {
                Item::Text { value } => {
                    let _ = writeln!(out, "{}: {value}", e.name);
                }
                Item::Flag { value } => {
                    let _ = writeln!(out, "{}: {}", e.name, if *value { "yes" } else { "no" });
                }
                Item::Integer { value } => {
                    let _ = writeln!(out, "{}: {value}", e.name);
                }
                Item::Expression { text, .. } => {
                    let _ = writeln!(out, "{}: {text}", e.name);
                }
                Item::Tensor {
                    upper,
                    lower,
                    components,
                    ..
                } => {
                    if components.is_empty() {
                        let _ = writeln!(out, "{} ({upper},{lower}): 0", e.name);
                    } else {
                        let _ = writeln!(out, "{} ({upper},{lower}):", e.name);
                        for c in components {
                            let idx: Vec<String> = c.indices.iter().map(usize::to_string).collect();
                            let _ = writeln!(out, "  [{}] = {}", idx.join(","), c.text);
                        }
                    }
                }
                Item::Matrix { size, components } => {
                    if components.is_empty() {
                        let _ = writeln!(out, "{} ({size}x{size}): 0", e.name);
                    } else {
                        let _ = writeln!(out, "{} ({size}x{size}):", e.name);
                        for c in components {
                            let _ = writeln!(out, "  ({},{}) = {}", c.indices[0], c.indices[1], c.text);
                        }
                    }
                }
                Item::Conditions { generators, .. } => {
                    let body = if generators.is_empty() {
                        "always".to_string()
                    } else if generators.len() == 1 && generators[0] == "1" {
                        "never".to_string()
                    } else {
                        format!("{{{}}} = 0", generators.join(", "))
                    };
                    let _ = writeln!(out, "{}: {body}", e.name);
                }
                Item::List { values } => {
                    let _ = writeln!(out, "{}: {}", e.name, values.join(", "));
                }
            }
        }
        out
    }
}
