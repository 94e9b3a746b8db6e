use std::collections::BTreeSet;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldKind};
use super::record::CustomerRecord;
use crate::error::{Error, Result};

/// How one retained field maps onto feature columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Encoding {
    /// Min-max scaled into `[0, 1]`, clamped outside the fitted bounds.
    /// `min == max` marks a constant feature, which always encodes to 0.
    Scaled { min: f64, max: f64 },
    /// yes → 1, no → 0.
    Flag,
    /// One indicator per level, levels sorted lexicographically. Unseen
    /// levels encode as an all-zero group.
    OneHot { levels: Vec<String> },
}

impl Encoding {
    pub fn width(&self) -> usize {
        match self {
            Encoding::Scaled { .. } | Encoding::Flag => 1,
            Encoding::OneHot { levels } => levels.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldEncoding {
    pub field: Field,
    pub encoding: Encoding,
}

/// Feature layout fitted on a training subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingSchema {
    dropped_fields: Vec<Field>,
    fields: Vec<FieldEncoding>,
}

/// Network input plus one-hot target `(churn = false, churn = true)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedExample {
    pub features: Vec<f64>,
    pub target: [f64; 2],
}

impl EncodedExample {
    pub fn label(&self) -> bool {
        self.target[1] == 1.0
    }
}

/// Tally of encode-time anomalies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EncodeStats {
    pub unseen_levels: usize,
}

pub(crate) fn label_target(churn: bool) -> [f64; 2] {
    if churn {
        [0.0, 1.0]
    } else {
        [1.0, 0.0]
    }
}

impl EncodingSchema {
    /// Drops identifiers, maps flags to 0/1, one-hot encodes categoricals
    /// and takes min-max bounds for numeric fields, all from `records`.
    pub fn fit(records: &[CustomerRecord]) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::Config("cannot fit an encoding schema on zero records".into()));
        }
        let mut dropped_fields = Vec::new();
        let mut fields = Vec::new();
        for field in Field::ALL {
            let encoding = match field.kind() {
                FieldKind::Identifier => {
                    dropped_fields.push(field);
                    continue;
                }
                FieldKind::Label => continue,
                FieldKind::Flag => Encoding::Flag,
                FieldKind::Categorical => {
                    let levels: BTreeSet<&str> =
                        records.iter().filter_map(|r| r.category(field)).collect();
                    Encoding::OneHot {
                        levels: levels.into_iter().map(str::to_owned).collect(),
                    }
                }
                FieldKind::Count | FieldKind::Real => {
                    let (min, max) = records
                        .iter()
                        .filter_map(|r| r.numeric(field))
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                            (lo.min(v), hi.max(v))
                        });
                    Encoding::Scaled { min, max }
                }
            };
            fields.push(FieldEncoding { field, encoding });
        }
        Ok(Self {
            dropped_fields,
            fields,
        })
    }

    pub fn dropped_fields(&self) -> &[Field] {
        &self.dropped_fields
    }

    /// Retained fields in column order.
    pub fn fields(&self) -> &[FieldEncoding] {
        &self.fields
    }

    /// Total number of feature columns.
    pub fn width(&self) -> usize {
        self.fields.iter().map(|f| f.encoding.width()).sum()
    }

    /// Columns occupied by `field`, or `None` if it is not encoded.
    pub fn span(&self, field: Field) -> Option<Range<usize>> {
        let mut start = 0;
        for f in &self.fields {
            let end = start + f.encoding.width();
            if f.field == field {
                return Some(start..end);
            }
            start = end;
        }
        None
    }

    /// Fields whose fitted range is a single value.
    pub fn constant_fields(&self) -> Vec<Field> {
        self.fields
            .iter()
            .filter(|f| matches!(f.encoding, Encoding::Scaled { min, max } if min == max))
            .map(|f| f.field)
            .collect()
    }

    /// Human-readable column names, e.g. `area_code=area_code_415`.
    pub fn feature_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.width());
        for f in &self.fields {
            match &f.encoding {
                Encoding::OneHot { levels } => {
                    names.extend(levels.iter().map(|l| format!("{}={l}", f.field)))
                }
                _ => names.push(f.field.name().to_string()),
            }
        }
        names
    }

    /// Feature vector for `record`; unseen categorical levels are counted
    /// in `stats`.
    pub fn encode_features(&self, record: &CustomerRecord, stats: &mut EncodeStats) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.width());
        for f in &self.fields {
            match &f.encoding {
                Encoding::Scaled { min, max } => {
                    let v = record.numeric(f.field).expect("numeric field");
                    out.push(if max > min {
                        ((v - min) / (max - min)).clamp(0.0, 1.0)
                    } else {
                        0.0
                    });
                }
                Encoding::Flag => {
                    out.push(if record.flag(f.field).expect("flag field") { 1.0 } else { 0.0 })
                }
                Encoding::OneHot { levels } => {
                    let value = record.category(f.field).unwrap_or_default();
                    let hit = levels.binary_search_by(|l| l.as_str().cmp(value)).ok();
                    if hit.is_none() {
                        stats.unseen_levels += 1;
                    }
                    out.extend((0..levels.len()).map(|k| if Some(k) == hit { 1.0 } else { 0.0 }));
                }
            }
        }
        out
    }

    /// Encodes a labeled record.
    pub fn encode(&self, record: &CustomerRecord, stats: &mut EncodeStats) -> Result<EncodedExample> {
        let churn = record
            .churn
            .ok_or_else(|| Error::Schema("record has no churn label".into()))?;
        Ok(EncodedExample {
            features: self.encode_features(record, stats),
            target: label_target(churn),
        })
    }

    pub fn encode_all(&self, records: &[CustomerRecord]) -> Result<(Vec<EncodedExample>, EncodeStats)> {
        let mut stats = EncodeStats::default();
        let examples = records
            .iter()
            .map(|r| self.encode(r, &mut stats))
            .collect::<Result<Vec<_>>>()?;
        Ok((examples, stats))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn record(area: &str, day_minutes: f64, intl: bool, churn: bool) -> CustomerRecord {
        CustomerRecord {
            state: "OH".into(),
            account_length: 100,
            area_code: area.into(),
            phone_number: Some("555-0000".into()),
            international_plan: intl,
            voice_mail_plan: false,
            num_vmail_messages: 0,
            total_day_minutes: day_minutes,
            total_day_calls: 90,
            total_day_charge: day_minutes * 0.17,
            total_eve_minutes: 200.0,
            total_eve_calls: 100,
            total_eve_charge: 17.0,
            total_night_minutes: 200.0,
            total_night_calls: 100,
            total_night_charge: 9.0,
            total_intl_minutes: 10.0,
            total_intl_calls: 3,
            total_intl_charge: 2.7,
            customer_service_calls: 1,
            churn: Some(churn),
        }
    }

    fn sample() -> Vec<CustomerRecord> {
        vec![
            record("415", 100.0, false, false),
            record("408", 300.0, true, true),
            record("510", 200.0, false, false),
        ]
    }

    #[test]
    fn layout() {
        let schema = EncodingSchema::fit(&sample()).unwrap();
        assert_eq!(schema.dropped_fields(), &[Field::State, Field::PhoneNumber]);
        assert_eq!(schema.span(Field::AreaCode), Some(1..4));
        assert_eq!(schema.span(Field::State), None);
        assert_eq!(schema.span(Field::Churn), None);
        // 15 numeric + 2 flags + 3 area codes
        assert_eq!(schema.width(), 20);
        assert_eq!(schema.feature_names().len(), 20);
        assert_eq!(schema.feature_names()[1], "area_code=408");
        match &schema.fields()[1].encoding {
            Encoding::OneHot { levels } => assert_eq!(levels, &["408", "415", "510"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_fit_is_config_error() {
        assert!(matches!(EncodingSchema::fit(&[]), Err(Error::Config(_))));
    }

    #[test]
    fn refit_is_identical() {
        assert_eq!(
            EncodingSchema::fit(&sample()).unwrap(),
            EncodingSchema::fit(&sample()).unwrap()
        );
    }

    #[test]
    fn constant_features_encode_to_zero() {
        let schema = EncodingSchema::fit(&sample()).unwrap();
        let constant = schema.constant_fields();
        assert!(constant.contains(&Field::AccountLength));
        assert!(!constant.contains(&Field::TotalDayMinutes));
        let mut stats = EncodeStats::default();
        let x = schema.encode_features(&sample()[0], &mut stats);
        assert_eq!(x[schema.span(Field::AccountLength).unwrap().start], 0.0);
    }

    #[test]
    fn scaling_endpoints_flags_and_labels() {
        let schema = EncodingSchema::fit(&sample()).unwrap();
        let day = schema.span(Field::TotalDayMinutes).unwrap().start;
        let intl = schema.span(Field::InternationalPlan).unwrap().start;
        let mut stats = EncodeStats::default();
        let lo = schema.encode(&sample()[0], &mut stats).unwrap();
        let hi = schema.encode(&sample()[1], &mut stats).unwrap();
        let mid = schema.encode(&sample()[2], &mut stats).unwrap();
        assert_eq!(lo.features[day], 0.0);
        assert_eq!(hi.features[day], 1.0);
        assert_eq!(mid.features[day], 0.5);
        assert_eq!(hi.features[intl], 1.0);
        assert_eq!(lo.features[intl], 0.0);
        assert_eq!(hi.target, [0.0, 1.0]);
        assert_eq!(lo.target, [1.0, 0.0]);
        assert!(hi.label() && !lo.label());
        assert_eq!(stats.unseen_levels, 0);
    }

    #[test]
    fn out_of_range_values_clamp() {
        let schema = EncodingSchema::fit(&sample()).unwrap();
        let day = schema.span(Field::TotalDayMinutes).unwrap().start;
        let mut stats = EncodeStats::default();
        let above = schema.encode_features(&record("415", 900.0, false, false), &mut stats);
        let below = schema.encode_features(&record("415", 0.0, false, false), &mut stats);
        assert_eq!(above[day], 1.0);
        assert_eq!(below[day], 0.0);
    }

    #[test]
    fn unseen_level_is_all_zero_and_counted() {
        let schema = EncodingSchema::fit(&sample()).unwrap();
        let mut stats = EncodeStats::default();
        let x = schema.encode_features(&record("999", 150.0, false, false), &mut stats);
        assert!(x[schema.span(Field::AreaCode).unwrap()].iter().all(|&v| v == 0.0));
        assert_eq!(stats.unseen_levels, 1);
    }

    #[test]
    fn unlabeled_record_cannot_be_encoded_as_example() {
        let schema = EncodingSchema::fit(&sample()).unwrap();
        let mut r = sample()[0].clone();
        r.churn = None;
        assert!(schema.encode(&r, &mut EncodeStats::default()).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let schema = EncodingSchema::fit(&sample()).unwrap();
        let json = serde_json::to_string(&schema).unwrap();
        assert_eq!(serde_json::from_str::<EncodingSchema>(&json).unwrap(), schema);
    }
}
