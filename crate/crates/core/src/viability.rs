//! The eight-principle viability rubric: ordinal ratings per principle,
//! mean scores per self-organization mechanism, and weakest-link aggregation
//! (the overall score is the minimum mechanism score — an organization is
//! only as viable as its weakest mechanism).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three self-organization mechanisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    CollectiveIntelligence,
    DigitalDemocracy,
    Adaptation,
}

impl Mechanism {
    pub const ALL: [Mechanism; 3] = [
        Mechanism::CollectiveIntelligence,
        Mechanism::DigitalDemocracy,
        Mechanism::Adaptation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mechanism::CollectiveIntelligence => "collective_intelligence",
            Mechanism::DigitalDemocracy => "digital_democracy",
            Mechanism::Adaptation => "adaptation",
        }
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// The eight principles, each belonging to exactly one mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Principle {
    Diversity,
    Transparency,
    Privacy,
    FreeExpression,
    Deliberation,
    Voting,
    Autonomy,
    Feedback,
}

impl Principle {
    pub const ALL: [Principle; 8] = [
        Principle::Diversity,
        Principle::Transparency,
        Principle::Privacy,
        Principle::FreeExpression,
        Principle::Deliberation,
        Principle::Voting,
        Principle::Autonomy,
        Principle::Feedback,
    ];

    pub fn mechanism(self) -> Mechanism {
        match self {
            Principle::Diversity
            | Principle::Transparency
            | Principle::Privacy
            | Principle::FreeExpression => Mechanism::CollectiveIntelligence,
            Principle::Deliberation | Principle::Voting => Mechanism::DigitalDemocracy,
            Principle::Autonomy | Principle::Feedback => Mechanism::Adaptation,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Principle::Diversity => "diversity",
            Principle::Transparency => "transparency",
            Principle::Privacy => "privacy",
            Principle::FreeExpression => "free_expression",
            Principle::Deliberation => "deliberation",
            Principle::Voting => "voting",
            Principle::Autonomy => "autonomy",
            Principle::Feedback => "feedback",
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordinal accomplishment level, 1 (Low) through 5 (High).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RatingLevel {
    Low = 1,
    LowMedium = 2,
    Medium = 3,
    MediumHigh = 4,
    High = 5,
}

impl RatingLevel {
    pub const ALL: [RatingLevel; 5] = [
        RatingLevel::Low,
        RatingLevel::LowMedium,
        RatingLevel::Medium,
        RatingLevel::MediumHigh,
        RatingLevel::High,
    ];

    pub fn value(self) -> u8 {
        self as u8
    }

    /// The exact level spellings used by assessment files.
    pub fn as_str(self) -> &'static str {
        match self {
            RatingLevel::Low => "Low",
            RatingLevel::LowMedium => "Low-Medium",
            RatingLevel::Medium => "Medium",
            RatingLevel::MediumHigh => "Medium-High",
            RatingLevel::High => "High",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "Low" => Ok(RatingLevel::Low),
            "Low-Medium" => Ok(RatingLevel::LowMedium),
            "Medium" => Ok(RatingLevel::Medium),
            "Medium-High" => Ok(RatingLevel::MediumHigh),
            "High" => Ok(RatingLevel::High),
            other => Err(Error::Invalid(format!(
                "unknown rating level '{other}' (expected Low, Low-Medium, Medium, Medium-High or High)"
            ))),
        }
    }
}

impl fmt::Display for RatingLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A level plus an optional free-text justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rating {
    pub level: RatingLevel,
    pub justification: Option<String>,
}

impl From<RatingLevel> for Rating {
    fn from(level: RatingLevel) -> Self {
        Rating {
            level,
            justification: None,
        }
    }
}

/// A complete assessment: all eight principles rated.
#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    pub dao_name: String,
    ratings: BTreeMap<Principle, Rating>,
}

impl Assessment {
    pub fn new(dao_name: impl Into<String>, ratings: BTreeMap<Principle, Rating>) -> Result<Self> {
        for p in Principle::ALL {
            if !ratings.contains_key(&p) {
                return Err(Error::MissingPrinciple(p.as_str().to_string()));
            }
        }
        Ok(Assessment {
            dao_name: dao_name.into(),
            ratings,
        })
    }

    pub fn rating(&self, p: Principle) -> &Rating {
        &self.ratings[&p]
    }

    /// Parses the assessment file format:
    /// `{"dao_name": ..., "ratings": {"diversity": "Medium-High", ...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct File {
            dao_name: String,
            ratings: BTreeMap<String, String>,
        }
        let file: File = serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("malformed assessment file: {e}")))?;
        let mut ratings = BTreeMap::new();
        for (key, value) in &file.ratings {
            let principle = Principle::ALL
                .into_iter()
                .find(|p| p.as_str() == key)
                .ok_or_else(|| Error::Invalid(format!("unknown principle '{key}'")))?;
            ratings.insert(principle, Rating::from(RatingLevel::parse(value)?));
        }
        Assessment::new(file.dao_name, ratings)
    }
}

/// How mechanism scores combine into the overall score. Weakest-link (min)
/// is the default and the variant under test; the weighted mean is provided
/// as a configuration alternative.
#[derive(Debug, Clone, PartialEq)]
pub enum Aggregation {
    MinOfMechanisms,
    /// Weights in [`Mechanism::ALL`] order; must not all be zero.
    WeightedMean([f64; 3]),
}

impl Default for Aggregation {
    fn default() -> Self {
        Aggregation::MinOfMechanisms
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViabilityReport {
    pub dao_name: String,
    /// Mean of the member principles' levels, per mechanism.
    pub mechanism_scores: BTreeMap<Mechanism, f64>,
    pub overall: f64,
    /// Exactly the principles rated at the global minimum level.
    pub weakest: Vec<Principle>,
}

/// Scores an assessment: mechanism score = arithmetic mean of its
/// principles' levels, overall = minimum mechanism score.
pub fn score_assessment(assessment: &Assessment) -> Result<ViabilityReport> {
    score_assessment_with(assessment, &Aggregation::MinOfMechanisms)
}

pub fn score_assessment_with(
    assessment: &Assessment,
    aggregation: &Aggregation,
) -> Result<ViabilityReport> {
    let mut mechanism_scores = BTreeMap::new();
    for mechanism in Mechanism::ALL {
        let levels: Vec<f64> = Principle::ALL
            .into_iter()
            .filter(|p| p.mechanism() == mechanism)
            .map(|p| assessment.rating(p).level.value() as f64)
            .collect();
        mechanism_scores.insert(
            mechanism,
            levels.iter().sum::<f64>() / levels.len() as f64,
        );
    }

    let overall = match aggregation {
        Aggregation::MinOfMechanisms => mechanism_scores
            .values()
            .cloned()
            .fold(f64::INFINITY, f64::min),
        Aggregation::WeightedMean(weights) => {
            let total: f64 = weights.iter().sum();
            if !(total > 0.0) {
                return Err(Error::invalid_parameter(
                    "weights",
                    "must have a positive sum",
                ));
            }
            Mechanism::ALL
                .iter()
                .zip(weights)
                .map(|(m, w)| mechanism_scores[m] * w)
                .sum::<f64>()
                / total
        }
    };

    let min_level = Principle::ALL
        .into_iter()
        .map(|p| assessment.rating(p).level)
        .min()
        .expect("eight principles");
    let weakest = Principle::ALL
        .into_iter()
        .filter(|&p| assessment.rating(p).level == min_level)
        .collect();

    Ok(ViabilityReport {
        dao_name: assessment.dao_name.clone(),
        mechanism_scores,
        overall,
        weakest,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl ReportFormat {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Invalid(format!(
                "unknown report format '{other}' (expected text or json)"
            ))),
        }
    }
}

/// Renders a report deterministically, as plain text or JSON.
pub fn render_report(report: &ViabilityReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(report).expect("report serializes")
        }
        ReportFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!("viability assessment: {}\n", report.dao_name));
            for mechanism in Mechanism::ALL {
                out.push_str(&format!(
                    "  {:<24} {:.2}\n",
                    mechanism,
                    report.mechanism_scores[&mechanism]
                ));
            }
            out.push_str(&format!("overall viability: {:.2}\n", report.overall));
            let weakest: Vec<&str> = report.weakest.iter().map(|p| p.as_str()).collect();
            out.push_str(&format!("weakest principles: {}\n", weakest.join(", ")));
            out
        }
    }
}
