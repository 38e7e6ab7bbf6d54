//! JSON interchange format for algebras, orders, and posets.
//!
//! The document shape is the same for field algebras and integral orders:
//! `field` is "Q", "Fp:<p>", or "Z" (orders additionally carry `prime`).
//! Multiplication is given as sparse quadruples [i, j, k, c] meaning
//! b_i · b_j has coefficient c at b_k, with c written as "a" or "a/b".
//! A `quiver` block may replace `mult`/`unit`/`grades`. Emission is
//! canonical: quadruples sorted, scalars in lowest terms, so parse → emit →
//! parse is the identity on canonical files.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, SparseVec};
use crate::error::{CoreError, Result};
use crate::forced::IntegralOrder;
use crate::qh::WeightPoset;
use crate::quiver::{from_quiver, Arrow, QuiverPresentation};
use crate::scalar::{is_prime_u64, ExactScalar, FieldMode};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetFile {
    /// Identifiers in simple-class order (λ = 0 first).
    pub elements: Vec<String>,
    /// Strict relations (smaller, larger) by identifier.
    pub relations: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: usize,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<(String, Vec<usize>)>>,
    pub truncation: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowFile {
    pub source: usize,
    pub target: usize,
    pub label: String,
    pub grade: usize,
}

fn parse_field(s: &str) -> Result<FieldMode> {
    if s == "Q" {
        return Ok(FieldMode::Q);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 =
            p.parse().map_err(|_| CoreError::Invalid(format!("bad prime in field '{s}'")))?;
        if !is_prime_u64(p) {
            return Err(CoreError::Invalid(format!("{p} is not prime")));
        }
        return Ok(FieldMode::Fp(p));
    }
    Err(CoreError::Invalid(format!("unknown field '{s}' (expected Q, Fp:<p>, or Z)")))
}

fn parse_scalar(mode: FieldMode, s: &str) -> Result<ExactScalar> {
    ExactScalar::parse(mode, s)
        .ok_or_else(|| CoreError::Invalid(format!("bad scalar literal '{s}'")))
}

impl PosetFile {
    pub fn to_poset(&self) -> Result<WeightPoset> {
        let pos = |name: &str| -> Result<usize> {
            self.elements.iter().position(|e| e == name).ok_or_else(|| {
                CoreError::BadPoset(format!("unknown poset element '{name}'"))
            })
        };
        let pairs: Vec<(usize, usize)> = self
            .relations
            .iter()
            .map(|(a, b)| Ok((pos(a)?, pos(b)?)))
            .collect::<Result<Vec<_>>>()?;
        WeightPoset::from_relations(self.elements.len(), &pairs)
    }
}

/// Parses an algebra document (field "Q" or "Fp:<p>").
pub fn parse_algebra(file: &AlgebraFile) -> Result<(Arc<GradedAlgebra>, Option<WeightPoset>)> {
    if file.field == "Z" {
        return Err(CoreError::Invalid(
            "field 'Z' denotes an integral order; use the order parser".into(),
        ));
    }
    let mode = parse_field(&file.field)?;
    let poset = file.poset.as_ref().map(|p| p.to_poset()).transpose()?;

    if let Some(q) = &file.quiver {
        if file.mult.is_some() || file.unit.is_some() || file.grades.is_some() {
            return Err(CoreError::Invalid(
                "a quiver block replaces mult/unit/grades".into(),
            ));
        }
        let pres = QuiverPresentation {
            mode,
            vertex_count: q.vertices,
            arrows: q
                .arrows
                .iter()
                .map(|a| Arrow {
                    source: a.source,
                    target: a.target,
                    label: a.label.clone(),
                    grade: a.grade,
                })
                .collect(),
            relations: q
                .relations
                .iter()
                .map(|rel| {
                    rel.iter()
                        .map(|(c, path)| Ok((parse_scalar(mode, c)?, path.clone())))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
            truncation_degree: q.truncation,
        };
        let a = from_quiver(&pres)?;
        return Ok((a, poset));
    }

    let dim = file.dim;
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for (i, j, k, c) in file.mult.as_deref().unwrap_or(&[]) {
        if *i >= dim || *j >= dim || *k >= dim {
            return Err(CoreError::Invalid(format!("mult index ({i},{j},{k}) out of range")));
        }
        let s = parse_scalar(mode, c)?;
        if !s.is_zero() {
            mult[*i][*j].push((*k, s));
        }
    }
    for row in &mut mult {
        for entry in row.iter_mut() {
            entry.sort_by_key(|(k, _)| *k);
        }
    }
    let unit = file
        .unit
        .as_ref()
        .ok_or_else(|| CoreError::Invalid("missing unit".into()))?
        .iter()
        .map(|c| parse_scalar(mode, c))
        .collect::<Result<Vec<_>>>()?;
    let grades =
        file.grades.clone().ok_or_else(|| CoreError::Invalid("missing grades".into()))?;
    let labels = file
        .labels
        .clone()
        .unwrap_or_else(|| (0..dim).map(|i| format!("b{i}")).collect());
    let idempotents = file
        .idempotents
        .as_ref()
        .map(|es| {
            es.iter()
                .map(|e| e.iter().map(|c| parse_scalar(mode, c)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let a = build_algebra(AlgebraSpec {
        mode,
        dim,
        labels,
        mult,
        unit,
        grades,
        idempotents,
        radical_basis: None,
    })?;
    Ok((a, poset))
}

/// Parses an integral order (field "Z" with a designated prime).
pub fn parse_order(file: &AlgebraFile) -> Result<IntegralOrder> {
    if file.field != "Z" {
        return Err(CoreError::Invalid("an order document needs field 'Z'".into()));
    }
    let prime =
        file.prime.ok_or_else(|| CoreError::Invalid("an order needs a prime".into()))?;
    if !is_prime_u64(prime) {
        return Err(CoreError::Invalid(format!("{prime} is not prime")));
    }
    let dim = file.dim;
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| CoreError::Invalid(format!("integer expected, got '{s}'")))
    };
    let mut mult = vec![vec![vec![BigInt::zero(); dim]; dim]; dim];
    for (i, j, k, c) in file.mult.as_deref().unwrap_or(&[]) {
        if *i >= dim || *j >= dim || *k >= dim {
            return Err(CoreError::Invalid(format!("mult index ({i},{j},{k}) out of range")));
        }
        mult[*i][*j][*k] += parse_int(c)?;
    }
    let unit = file
        .unit
        .as_ref()
        .ok_or_else(|| CoreError::Invalid("missing unit".into()))?
        .iter()
        .map(|c| parse_int(c))
        .collect::<Result<Vec<_>>>()?;
    let labels = file
        .labels
        .clone()
        .unwrap_or_else(|| (0..dim).map(|i| format!("b{i}")).collect());
    Ok(IntegralOrder { dim, labels, mult, unit, prime })
}

/// Canonical emission of an algebra, round-trippable through
/// [`parse_algebra`].
pub fn emit_algebra(a: &GradedAlgebra, poset: Option<&WeightPoset>) -> AlgebraFile {
    let dim = a.dim();
    let mut mult = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in a.structure_constant(i, j) {
                mult.push((i, j, *k, c.canonical_string()));
            }
        }
    }
    mult.sort();
    AlgebraFile {
        field: a.mode().to_string(),
        prime: None,
        dim,
        labels: Some(a.labels().to_vec()),
        mult: Some(mult),
        unit: Some(a.unit().iter().map(|c| c.canonical_string()).collect()),
        grades: Some(a.grades().to_vec()),
        idempotents: a.idempotents().map(|es| {
            es.iter().map(|e| e.iter().map(|c| c.canonical_string()).collect()).collect()
        }),
        poset: poset.map(|p| PosetFile {
            elements: (0..p.len()).map(|i| i.to_string()).collect(),
            relations: p
                .strict_pairs()
                .into_iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect(),
        }),
        quiver: None,
    }
}

pub fn to_json(file: &AlgebraFile) -> String {
    serde_json::to_string_pretty(file).expect("serializable") + "\n"
}

pub fn from_json(s: &str) -> Result<AlgebraFile> {
    serde_json::from_str(s).map_err(|e| CoreError::Invalid(format!("JSON parse error: {e}")))
}

/// Extra validation hook for parsed algebras used by round-trip tests: the
/// emitted document reparses to an identical algebra.
pub fn roundtrip_identical(a: &GradedAlgebra) -> Result<bool> {
    let emitted = emit_algebra(a, None);
    let (b, _) = parse_algebra(&emitted)?;
    let same = a.dim() == b.dim()
        && a.grades() == b.grades()
        && a.unit() == b.unit()
        && (0..a.dim())
            .all(|i| (0..a.dim()).all(|j| a.structure_constant(i, j) == b.structure_constant(i, j)));
    Ok(same)
}
