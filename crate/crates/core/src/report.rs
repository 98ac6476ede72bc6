//! Serializable report document shared by every CLI subcommand.
//!
//! All algebraic values are rendered in the canonical text grammar so that
//! reports are stable, human-readable, and schema-checkable.

use crate::affine::{AffineGenerator, AffineWeight, MuZeroReport};
use crate::character::RootCoordinates;
use crate::coeff::MuPoly;
use crate::element::Element;
use crate::finite::{
    CollisionPair, GlGenerator, HomReport, HomViolation, ReachOutcome, SingularVector,
    SpanCheckOutcome,
};
use crate::monomial::Signature;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Display;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SignatureDto {
    pub m: u16,
    pub n: u16,
    pub affine: bool,
}

impl From<&Signature> for SignatureDto {
    fn from(sig: &Signature) -> Self {
        SignatureDto { m: sig.m, n: sig.n, affine: sig.affine }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationDto {
    pub left: String,
    pub right: String,
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepDto {
    pub pairs_checked: usize,
    pub monomials_checked: usize,
    pub violations: Vec<ViolationDto>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularVectorDto {
    pub sl_weight: Vec<String>,
    pub vector: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CollisionDto {
    pub first: String,
    pub second: String,
    pub sl_weight: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDto {
    pub reached: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
    pub span_dim: usize,
    pub space_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightsDto {
    pub monomial: String,
    pub weight: Vec<String>,
    pub sl_weight: Vec<String>,
    pub matches_action: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine_weight: Option<AffineWeightDto>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineWeightDto {
    pub diag: Vec<String>,
    pub level: i64,
    pub d_eigen: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterDto {
    pub p: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Vec<u32>>>,
    pub dims: Vec<GradedDimDto>,
    pub bijection_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Vec<QuotientWeightDto>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedDimDto {
    pub degree: u32,
    pub dimension: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientWeightDto {
    pub weight: Vec<String>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct VmuDto {
    pub generator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MuZeroDto {
    pub applications_checked: usize,
    pub degree_one_lowerings_checked: usize,
    pub degree_one_all_annihilated: bool,
    pub unit_component_violations: Vec<String>,
    pub confirmed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanCheckDto {
    pub degree: u32,
    pub dimension: usize,
    pub spans_from_every_monomial: bool,
    pub highest_weight_vector: String,
    pub highest_weight_annihilated: bool,
    pub highest_weight_unique: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApplyDto {
    pub generator: String,
    pub input: String,
    pub result: String,
}

/// The report document emitted by every subcommand; exactly one payload field
/// is populated per operation.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub signature: SignatureDto,
    pub operation: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<SingularVectorDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collisions: Option<Vec<CollisionDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vmu: Option<VmuDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_zero: Option<MuZeroDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span_check: Option<SpanCheckDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apply: Option<ApplyDto>,
    pub passed: bool,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(sig: &Signature, operation: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            signature: sig.into(),
            operation: operation.to_string(),
            parameters: BTreeMap::new(),
            sweep: None,
            basis: None,
            collisions: None,
            certificate: None,
            weights: None,
            character: None,
            vmu: None,
            mu_zero: None,
            span_check: None,
            apply: None,
            passed: true,
            runtime_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }
}

fn polys_to_strings(ps: &[MuPoly]) -> Vec<String> {
    ps.iter().map(|p| p.canonical_string()).collect()
}

fn render_elem(e: &Element, affine: bool) -> String {
    e.render(affine)
}

pub fn sweep_dto<G: Display>(r: &HomReport<G>, affine: bool) -> SweepDto {
    SweepDto {
        pairs_checked: r.pairs_checked,
        monomials_checked: r.monomials_checked,
        violations: r.violations.iter().map(|v| violation_dto(v, affine)).collect(),
    }
}

fn violation_dto<G: Display>(v: &HomViolation<G>, affine: bool) -> ViolationDto {
    ViolationDto {
        left: v.left.to_string(),
        right: v.right.to_string(),
        monomial: v.monomial.render(affine),
        lhs: render_elem(&v.lhs, affine),
        rhs: render_elem(&v.rhs, affine),
    }
}

pub fn singular_dto(vs: &[SingularVector]) -> Vec<SingularVectorDto> {
    vs.iter()
        .map(|v| SingularVectorDto {
            sl_weight: polys_to_strings(&v.sl_weight.0),
            vector: v.vector.render(false),
        })
        .collect()
}

pub fn collisions_dto(ps: &[CollisionPair]) -> Vec<CollisionDto> {
    ps.iter()
        .map(|p| CollisionDto {
            first: p.first.render(false),
            second: p.second.render(false),
            sl_weight: polys_to_strings(&p.sl_weight.0),
        })
        .collect()
}

pub fn finite_certificate_dto(r: &ReachOutcome<GlGenerator>) -> CertificateDto {
    CertificateDto {
        reached: r.reached,
        word: r
            .certificate
            .as_ref()
            .map(|w| w.iter().map(|g| g.to_string()).collect()),
        span_dim: r.span_dim,
        space_dim: r.space_dim,
    }
}

pub fn affine_certificate_dto(r: &ReachOutcome<AffineGenerator>) -> CertificateDto {
    CertificateDto {
        reached: r.reached,
        word: r
            .certificate
            .as_ref()
            .map(|w| w.iter().map(|g| g.to_string()).collect()),
        span_dim: r.span_dim,
        space_dim: r.space_dim,
    }
}

pub fn affine_weight_dto(w: &AffineWeight) -> AffineWeightDto {
    AffineWeightDto {
        diag: polys_to_strings(&w.diag),
        level: w.level,
        d_eigen: w.d_eigen,
    }
}

pub fn mu_zero_dto(r: &MuZeroReport) -> MuZeroDto {
    MuZeroDto {
        applications_checked: r.applications_checked,
        degree_one_lowerings_checked: r.degree_one_lowerings_checked,
        degree_one_all_annihilated: r.degree_one_all_annihilated,
        unit_component_violations: r
            .violations
            .iter()
            .map(|v| {
                format!(
                    "{} on {} leaves unit coefficient {}",
                    v.generator,
                    v.monomial.render(true),
                    v.unit_coefficient.canonical_string()
                )
            })
            .collect(),
        confirmed: r.confirmed(),
    }
}

pub fn span_check_dto(o: &SpanCheckOutcome) -> SpanCheckDto {
    SpanCheckDto {
        degree: o.degree,
        dimension: o.dimension,
        spans_from_every_monomial: o.spans_from_every_monomial,
        highest_weight_vector: o.highest_weight_vector.render(false),
        highest_weight_annihilated: o.highest_weight_annihilated,
        highest_weight_unique: o.highest_weight_unique,
    }
}

pub fn coords_list(ts: &[RootCoordinates]) -> Vec<Vec<u32>> {
    ts.iter().map(|t| t.0.clone()).collect()
}
