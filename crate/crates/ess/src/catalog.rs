//! Technique catalog: intrinsic property vectors, latency profiles, loading,
//! validation, and modality filtering.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower bound of the rating scale.
pub const RATING_MIN: f64 = 1.0;
/// Upper bound of the rating scale.
pub const RATING_MAX: f64 = 5.0;

/// TOML source of the built-in catalog embedded in the library.
pub const BUILTIN_CATALOG_TOML: &str = include_str!("builtin.toml");

/// Seven intrinsic ratings of a technique, each on a 1-5 scale.
///
/// Ratings are real-valued so calibrated catalogs can use fractional scores;
/// the built-in catalog uses integers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPropertyVector")]
pub struct PropertyVector {
    auditability: f64,
    traceability: f64,
    comprehensibility: f64,
    actionability: f64,
    fidelity: f64,
    debuggability: f64,
    efficiency: f64,
}

impl PropertyVector {
    /// Builds a vector, rejecting any rating outside `[RATING_MIN, RATING_MAX]`.
    ///
    /// Arguments follow the canonical order: auditability, traceability,
    /// comprehensibility, actionability, fidelity, debuggability, efficiency.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        auditability: f64,
        traceability: f64,
        comprehensibility: f64,
        actionability: f64,
        fidelity: f64,
        debuggability: f64,
        efficiency: f64,
    ) -> Result<Self> {
        Self::validated(
            "property vector",
            RawPropertyVector {
                auditability,
                traceability,
                comprehensibility,
                actionability,
                fidelity,
                debuggability,
                efficiency,
            },
        )
    }

    fn validated(subject: &str, raw: RawPropertyVector) -> Result<Self> {
        let fields = [
            ("auditability", raw.auditability),
            ("traceability", raw.traceability),
            ("comprehensibility", raw.comprehensibility),
            ("actionability", raw.actionability),
            ("fidelity", raw.fidelity),
            ("debuggability", raw.debuggability),
            ("efficiency", raw.efficiency),
        ];
        for (field, value) in fields {
            check_rating(subject, field, value)?;
        }
        Ok(Self {
            auditability: raw.auditability,
            traceability: raw.traceability,
            comprehensibility: raw.comprehensibility,
            actionability: raw.actionability,
            fidelity: raw.fidelity,
            debuggability: raw.debuggability,
            efficiency: raw.efficiency,
        })
    }

    pub fn auditability(&self) -> f64 {
        self.auditability
    }

    pub fn traceability(&self) -> f64 {
        self.traceability
    }

    pub fn comprehensibility(&self) -> f64 {
        self.comprehensibility
    }

    pub fn actionability(&self) -> f64 {
        self.actionability
    }

    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }

    pub fn debuggability(&self) -> f64 {
        self.debuggability
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }
}

fn check_rating(subject: &str, field: &str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::validation(
            subject,
            field,
            format!("must be a finite number, got {value}"),
        ));
    }
    if !(RATING_MIN..=RATING_MAX).contains(&value) {
        return Err(Error::validation(
            subject,
            field,
            format!("must be within [{RATING_MIN}, {RATING_MAX}], got {value}"),
        ));
    }
    Ok(())
}

/// Whether a technique can produce explanations inside a live request or only
/// in a separate offline pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatencyMode {
    Online,
    OfflineOnly,
}

/// Latency behaviour of a technique: its mode plus, for online techniques,
/// an estimated per-explanation cost in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLatencyProfile")]
pub struct LatencyProfile {
    mode: LatencyMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate_ms: Option<f64>,
}

impl LatencyProfile {
    /// Online profile with a non-negative millisecond estimate.
    pub fn online(estimate_ms: f64) -> Result<Self> {
        Self::validated(
            "latency profile",
            RawLatencyProfile {
                mode: LatencyMode::Online,
                estimate_ms: Some(estimate_ms),
            },
        )
    }

    /// Offline-only profile; carries no estimate.
    pub fn offline_only() -> Self {
        Self {
            mode: LatencyMode::OfflineOnly,
            estimate_ms: None,
        }
    }

    fn validated(subject: &str, raw: RawLatencyProfile) -> Result<Self> {
        match (raw.mode, raw.estimate_ms) {
            (LatencyMode::Online, Some(ms)) => {
                if !ms.is_finite() || ms < 0.0 {
                    return Err(Error::validation(
                        subject,
                        "estimate_ms",
                        format!("must be a non-negative number of milliseconds, got {ms}"),
                    ));
                }
                Ok(Self {
                    mode: LatencyMode::Online,
                    estimate_ms: Some(ms),
                })
            }
            (LatencyMode::Online, None) => Err(Error::validation(
                subject,
                "estimate_ms",
                "required when mode is `online`",
            )),
            (LatencyMode::OfflineOnly, Some(_)) => Err(Error::validation(
                subject,
                "estimate_ms",
                "must be absent when mode is `offline_only`",
            )),
            (LatencyMode::OfflineOnly, None) => Ok(Self::offline_only()),
        }
    }

    pub fn mode(&self) -> LatencyMode {
        self.mode
    }

    /// Millisecond estimate; `None` exactly when the mode is offline-only.
    pub fn estimate_ms(&self) -> Option<f64> {
        self.estimate_ms
    }
}

/// One explanation technique: identity, applicability, and measured properties.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTechnique")]
pub struct Technique {
    pub id: String,
    pub name: String,
    pub family: String,
    pub modalities: BTreeSet<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub properties: PropertyVector,
    pub latency: LatencyProfile,
}

impl Technique {
    pub fn new(
        id: impl Into<String>,
        name: impl Into<String>,
        family: impl Into<String>,
        modalities: impl IntoIterator<Item = impl Into<String>>,
        properties: PropertyVector,
        latency: LatencyProfile,
    ) -> Result<Self> {
        let technique = Self {
            id: id.into(),
            name: name.into(),
            family: family.into(),
            modalities: modalities.into_iter().map(Into::into).collect(),
            notes: None,
            properties,
            latency,
        };
        technique.check()?;
        Ok(technique)
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = Some(notes.into());
        self
    }

    /// True when the technique applies to the given data modality.
    pub fn supports_modality(&self, modality: &str) -> bool {
        self.modalities.contains(modality)
    }

    fn subject(&self) -> String {
        format!("technique `{}`", self.id)
    }

    fn check(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::validation("technique", "id", "must not be empty"));
        }
        if self.modalities.is_empty() {
            return Err(Error::validation(
                self.subject(),
                "modalities",
                "must list at least one data modality",
            ));
        }
        Ok(())
    }
}

/// An ordered, validated collection of techniques with unique ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCatalogFile")]
pub struct Catalog {
    techniques: Vec<Technique>,
}

impl Catalog {
    /// Builds a catalog from already-constructed techniques, rejecting
    /// duplicate ids and re-checking per-technique invariants.
    pub fn new(techniques: Vec<Technique>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for technique in &techniques {
            technique.check()?;
            if !seen.insert(technique.id.as_str()) {
                return Err(Error::validation(
                    technique.subject(),
                    "id",
                    "duplicate id within the catalog",
                ));
            }
        }
        Ok(Self { techniques })
    }

    /// The catalog embedded in the library.
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN_CATALOG_TOML).expect("embedded catalog is valid")
    }

    /// Parses a catalog document. Syntax problems surface as parse errors,
    /// domain problems (rating bounds, duplicate ids, latency estimates) as
    /// validation errors naming the technique and field.
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawCatalogFile = toml::from_str(text).map_err(|e| Error::Parse {
            message: e.to_string(),
        })?;
        raw.try_into()
    }

    /// Reads and parses a catalog file from disk.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn techniques(&self) -> &[Technique] {
        &self.techniques
    }

    pub fn len(&self) -> usize {
        self.techniques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.techniques.is_empty()
    }

    /// Looks a technique up by id.
    pub fn get(&self, id: &str) -> Option<&Technique> {
        self.techniques.iter().find(|t| t.id == id)
    }

    /// The sub-catalog of techniques supporting the given modality, in the
    /// original order. An empty result is valid.
    pub fn filter_applicable(&self, modality: &str) -> Catalog {
        Catalog {
            techniques: self
                .techniques
                .iter()
                .filter(|t| t.supports_modality(modality))
                .cloned()
                .collect(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalogFile {
    #[serde(default)]
    techniques: Vec<RawTechnique>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTechnique {
    id: String,
    name: String,
    family: String,
    modalities: Vec<String>,
    notes: Option<String>,
    properties: RawPropertyVector,
    latency: RawLatencyProfile,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPropertyVector {
    auditability: f64,
    traceability: f64,
    comprehensibility: f64,
    actionability: f64,
    fidelity: f64,
    debuggability: f64,
    efficiency: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLatencyProfile {
    mode: LatencyMode,
    estimate_ms: Option<f64>,
}

impl TryFrom<RawCatalogFile> for Catalog {
    type Error = Error;

    fn try_from(raw: RawCatalogFile) -> Result<Self> {
        let techniques = raw
            .techniques
            .into_iter()
            .map(Technique::try_from)
            .collect::<Result<Vec<_>>>()?;
        Catalog::new(techniques)
    }
}

impl TryFrom<RawTechnique> for Technique {
    type Error = Error;

    fn try_from(raw: RawTechnique) -> Result<Self> {
        let subject = format!("technique `{}`", raw.id);
        let technique = Technique {
            id: raw.id,
            name: raw.name,
            family: raw.family,
            modalities: raw.modalities.into_iter().collect(),
            notes: raw.notes,
            properties: PropertyVector::validated(&subject, raw.properties)?,
            latency: LatencyProfile::validated(&subject, raw.latency)?,
        };
        technique.check()?;
        Ok(technique)
    }
}

impl TryFrom<RawPropertyVector> for PropertyVector {
    type Error = Error;

    fn try_from(raw: RawPropertyVector) -> Result<Self> {
        Self::validated("property vector", raw)
    }
}

impl TryFrom<RawLatencyProfile> for LatencyProfile {
    type Error = Error;

    fn try_from(raw: RawLatencyProfile) -> Result<Self> {
        Self::validated("latency profile", raw)
    }
}
