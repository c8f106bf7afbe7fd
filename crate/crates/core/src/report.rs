//! Check results and the structured report emitted by every analysis.
//!
//! Frame indices in reports are 1-based; everything else in the crate is 0-based.

use std::fmt::Write as _;

use serde::Serialize;

use crate::scalar::PolyScalar;
use crate::tensor::{MultiIndex, Slot, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub index: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Component>>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), verdict: Verdict::Pass, witness: None, detail: None, components: None }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::Fail,
            witness: None,
            detail: Some(detail.into()),
            components: None,
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail_on_fail: impl Into<String>) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, detail_on_fail)
        }
    }

    /// Attaches a 0-based witness, stored 1-based.
    pub fn with_witness(mut self, idx: &[usize]) -> Self {
        self.witness = Some(idx.iter().map(|i| i + 1).collect());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_components(mut self, components: Vec<Component>) -> Self {
        self.components = Some(components);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Combines sub-checks under one name; fails on the first failing part.
    pub fn all_of(name: impl Into<String>, parts: Vec<Check>) -> Self {
        let name = name.into();
        match parts.into_iter().find(|c| !c.passed()) {
            None => Check::pass(name),
            Some(bad) => {
                let detail = match bad.detail {
                    Some(d) => format!("{}: {}", bad.name, d),
                    None => bad.name.clone(),
                };
                Check { name, verdict: Verdict::Fail, witness: bad.witness, detail: Some(detail), components: None }
            }
        }
    }
}

/// Checks `residual(idx) == 0` for every frame multi-index of the given rank.
pub fn identity_check(
    name: impl Into<String>,
    dim: usize,
    rank: usize,
    mut residual: impl FnMut(&[usize]) -> PolyScalar,
) -> Check {
    let name = name.into();
    for idx in MultiIndex::new(dim, rank) {
        let r = residual(&idx);
        if !r.is_zero() {
            return Check::fail(name, format!("residual {r}")).with_witness(&idx);
        }
    }
    Check::pass(name)
}

pub fn tensors_equal_check(name: impl Into<String>, lhs: &Tensor, rhs: &Tensor) -> Check {
    let name = name.into();
    match lhs.first_difference(rhs) {
        Ok(None) => Check::pass(name),
        Ok(Some((idx, diff))) => Check::fail(name, format!("difference {diff}")).with_witness(&idx),
        Err(e) => Check::fail(name, e.to_string()),
    }
}

pub fn tensor_zero_check(name: impl Into<String>, t: &Tensor) -> Check {
    let name = name.into();
    match t.nonzero_components().first() {
        None => Check::pass(name),
        Some((idx, v)) => Check::fail(name, format!("nonzero component {v}")).with_witness(idx),
    }
}

pub fn components_of(t: &Tensor) -> Vec<Component> {
    t.nonzero_components()
        .into_iter()
        .map(|(idx, v)| Component { index: idx.iter().map(|i| i + 1).collect(), value: v.to_string() })
        .collect()
}

/// Nonzero components of a named tensor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub slots: Vec<Slot>,
    pub components: Vec<Component>,
}

impl Table {
    pub fn from_tensor(name: impl Into<String>, t: &Tensor) -> Self {
        Table { name: name.into(), slots: t.slots().to_vec(), components: components_of(t) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<NamedValue>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn value(&mut self, name: impl Into<String>, value: &PolyScalar) {
        self.values.push(NamedValue { name: name.into(), value: value.to_string() });
    }

    pub fn table(&mut self, name: impl Into<String>, t: &Tensor) {
        self.tables.push(Table::from_tensor(name, t));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends another report's checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.values.extend(other.values);
        self.tables.extend(other.tables);
        self.notes.extend(other.notes);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.title);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let mut line = format!("[{tag}] {:width$}", c.name);
            if let Some(w) = &c.witness {
                let idx: Vec<String> = w.iter().map(ToString::to_string).collect();
                let _ = write!(line, "  at ({})", idx.join(","));
            }
            if let Some(d) = &c.detail {
                let _ = write!(line, "  {d}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
            for comp in c.components.iter().flatten() {
                let _ = writeln!(out, "       {:?} = {}", comp.index, comp.value);
            }
        }
        if !self.values.is_empty() {
            out.push('\n');
            let w = self.values.iter().map(|v| v.name.len()).max().unwrap_or(0);
            for v in &self.values {
                let _ = writeln!(out, "{:w$} = {}", v.name, v.value);
            }
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n{} (nonzero components: {})", t.name, t.components.len());
            for comp in &t.components {
                let idx: Vec<String> = comp.index.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  {}({}) = {}", t.name, idx.join(","), comp.value);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}
