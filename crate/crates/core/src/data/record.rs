use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use csv::StringRecord;

use super::field::{Field, FieldKind};
use crate::error::{Error, Result, RowError};

/// Parsing fails outright when more than this share of rows is malformed.
pub const MAX_REJECTED_FRACTION: f64 = 0.01;

/// One customer row. `churn` is `None` only for files read without a label
/// column.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomerRecord {
    pub state: String,
    pub account_length: u32,
    pub area_code: String,
    pub phone_number: Option<String>,
    pub international_plan: bool,
    pub voice_mail_plan: bool,
    pub num_vmail_messages: u32,
    pub total_day_minutes: f64,
    pub total_day_calls: u32,
    pub total_day_charge: f64,
    pub total_eve_minutes: f64,
    pub total_eve_calls: u32,
    pub total_eve_charge: f64,
    pub total_night_minutes: f64,
    pub total_night_calls: u32,
    pub total_night_charge: f64,
    pub total_intl_minutes: f64,
    pub total_intl_calls: u32,
    pub total_intl_charge: f64,
    pub customer_service_calls: u32,
    pub churn: Option<bool>,
}

impl CustomerRecord {
    /// Value of a count or real field.
    pub fn numeric(&self, field: Field) -> Option<f64> {
        use Field::*;
        let v = match field {
            AccountLength => self.account_length as f64,
            NumVmailMessages => self.num_vmail_messages as f64,
            TotalDayMinutes => self.total_day_minutes,
            TotalDayCalls => self.total_day_calls as f64,
            TotalDayCharge => self.total_day_charge,
            TotalEveMinutes => self.total_eve_minutes,
            TotalEveCalls => self.total_eve_calls as f64,
            TotalEveCharge => self.total_eve_charge,
            TotalNightMinutes => self.total_night_minutes,
            TotalNightCalls => self.total_night_calls as f64,
            TotalNightCharge => self.total_night_charge,
            TotalIntlMinutes => self.total_intl_minutes,
            TotalIntlCalls => self.total_intl_calls as f64,
            TotalIntlCharge => self.total_intl_charge,
            CustomerServiceCalls => self.customer_service_calls as f64,
            _ => return None,
        };
        Some(v)
    }

    pub fn flag(&self, field: Field) -> Option<bool> {
        match field {
            Field::InternationalPlan => Some(self.international_plan),
            Field::VoiceMailPlan => Some(self.voice_mail_plan),
            _ => None,
        }
    }

    /// Value of a categorical or identifier field.
    pub fn category(&self, field: Field) -> Option<&str> {
        match field {
            Field::State => Some(&self.state),
            Field::AreaCode => Some(&self.area_code),
            Field::PhoneNumber => self.phone_number.as_deref(),
            _ => None,
        }
    }

    fn render(&self, field: Field) -> String {
        let yes_no = |b: bool| if b { "yes" } else { "no" }.to_string();
        match field.kind() {
            FieldKind::Count | FieldKind::Real => {
                let v = self.numeric(field).expect("numeric field");
                format!("{v}")
            }
            FieldKind::Flag => yes_no(self.flag(field).expect("flag field")),
            FieldKind::Identifier | FieldKind::Categorical => {
                self.category(field).unwrap_or_default().to_string()
            }
            FieldKind::Label => self.churn.map(yes_no).unwrap_or_default(),
        }
    }
}

/// Records that parsed, plus the rows that did not.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub records: Vec<CustomerRecord>,
    pub rejected: Vec<RowError>,
}

/// A CSV file with its header resolved against [`Field`], kept as raw rows
/// so callers can echo them back unchanged.
#[derive(Debug, Clone)]
pub struct CsvTable {
    headers: StringRecord,
    column_of: [Option<usize>; Field::ALL.len()],
    rows: Vec<(u64, StringRecord)>,
}

impl CsvTable {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_reader(file)
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let column_of = resolve_headers(&headers)?;
        let mut rows = Vec::new();
        for row in rdr.records() {
            let row = row?;
            let line = row.position().map_or(0, |p| p.line());
            rows.push((line, row));
        }
        Ok(Self {
            headers,
            column_of,
            rows,
        })
    }

    pub fn headers(&self) -> &StringRecord {
        &self.headers
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &StringRecord> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn has_label(&self) -> bool {
        self.column_of[Field::Churn as usize].is_some()
    }

    /// Parses row `index` (0-based, excluding the header). An empty label
    /// cell parses as `None`.
    pub fn parse_row(&self, index: usize) -> Result<CustomerRecord, RowError> {
        let (line, row) = &self.rows[index];
        let line = *line;
        if row.len() != self.headers.len() {
            return Err(RowError {
                line,
                message: format!("expected {} cells, found {}", self.headers.len(), row.len()),
            });
        }
        let cell = |f: Field| self.column_of[f as usize].map(|c| &row[c]);
        let fail = |f: Field, msg: String| RowError {
            line,
            message: format!("{f}: {msg}"),
        };
        let text = |f: Field| -> Result<String, RowError> {
            let v = cell(f).unwrap_or_default();
            if v.is_empty() && !f.is_optional() {
                return Err(fail(f, "empty value".into()));
            }
            Ok(v.to_string())
        };
        let count = |f: Field| -> Result<u32, RowError> {
            let v = cell(f).unwrap_or_default();
            v.parse::<u32>()
                .map_err(|_| fail(f, format!("expected a non-negative integer, got `{v}`")))
        };
        let real = |f: Field| -> Result<f64, RowError> {
            let v = cell(f).unwrap_or_default();
            match v.parse::<f64>() {
                Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
                _ => Err(fail(f, format!("expected a finite non-negative number, got `{v}`"))),
            }
        };
        let flag = |f: Field| -> Result<bool, RowError> {
            let v = cell(f).unwrap_or_default();
            parse_yes_no(v).ok_or_else(|| fail(f, format!("expected yes/no, got `{v}`")))
        };
        let churn = match cell(Field::Churn) {
            None | Some("") => None,
            Some(v) => Some(
                parse_label(v)
                    .ok_or_else(|| fail(Field::Churn, format!("expected a true/false label, got `{v}`")))?,
            ),
        };
        let phone = text(Field::PhoneNumber)?;
        Ok(CustomerRecord {
            state: text(Field::State)?,
            account_length: count(Field::AccountLength)?,
            area_code: text(Field::AreaCode)?,
            phone_number: (!phone.is_empty()).then_some(phone),
            international_plan: flag(Field::InternationalPlan)?,
            voice_mail_plan: flag(Field::VoiceMailPlan)?,
            num_vmail_messages: count(Field::NumVmailMessages)?,
            total_day_minutes: real(Field::TotalDayMinutes)?,
            total_day_calls: count(Field::TotalDayCalls)?,
            total_day_charge: real(Field::TotalDayCharge)?,
            total_eve_minutes: real(Field::TotalEveMinutes)?,
            total_eve_calls: count(Field::TotalEveCalls)?,
            total_eve_charge: real(Field::TotalEveCharge)?,
            total_night_minutes: real(Field::TotalNightMinutes)?,
            total_night_calls: count(Field::TotalNightCalls)?,
            total_night_charge: real(Field::TotalNightCharge)?,
            total_intl_minutes: real(Field::TotalIntlMinutes)?,
            total_intl_calls: count(Field::TotalIntlCalls)?,
            total_intl_charge: real(Field::TotalIntlCharge)?,
            customer_service_calls: count(Field::CustomerServiceCalls)?,
            churn,
        })
    }

    /// Parses every row, collecting malformed ones. Fails when the label
    /// column is required but absent, or when rejected rows exceed
    /// [`MAX_REJECTED_FRACTION`].
    pub fn records(&self, require_label: bool) -> Result<Dataset> {
        if require_label && !self.has_label() {
            return Err(Error::Schema(format!(
                "missing required column `{}`",
                Field::Churn
            )));
        }
        let mut data = Dataset::default();
        for i in 0..self.rows.len() {
            match self.parse_row(i) {
                Ok(r) if require_label && r.churn.is_none() => data.rejected.push(RowError {
                    line: self.rows[i].0,
                    message: format!("{}: empty value", Field::Churn),
                }),
                Ok(r) => data.records.push(r),
                Err(e) => data.rejected.push(e),
            }
        }
        let total = self.rows.len();
        if data.rejected.len() as f64 > MAX_REJECTED_FRACTION * total as f64 {
            return Err(Error::Rows {
                errors: data.rejected,
                total,
            });
        }
        Ok(data)
    }
}

fn resolve_headers(headers: &StringRecord) -> Result<[Option<usize>; Field::ALL.len()]> {
    let mut column_of = [None; Field::ALL.len()];
    for (c, h) in headers.iter().enumerate() {
        let field = Field::from_header(h)
            .ok_or_else(|| Error::Schema(format!("unknown column `{h}`")))?;
        if let Some(prev) = column_of[field as usize].replace(c) {
            return Err(Error::Schema(format!(
                "columns {} and {} both map to `{field}`",
                prev + 1,
                c + 1
            )));
        }
    }
    let missing: Vec<&str> = Field::ALL
        .iter()
        .filter(|f| !f.is_optional() && **f != Field::Churn && column_of[**f as usize].is_none())
        .map(|f| f.name())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Schema(format!(
            "missing required column(s): {}",
            missing.join(", ")
        )));
    }
    Ok(column_of)
}

fn parse_yes_no(v: &str) -> Option<bool> {
    match v.to_ascii_lowercase().as_str() {
        "yes" => Some(true),
        "no" => Some(false),
        _ => None,
    }
}

fn parse_label(v: &str) -> Option<bool> {
    let v = v.to_ascii_lowercase();
    match v.strip_suffix('.').unwrap_or(&v) {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

/// Reads a labeled churn CSV.
pub fn parse_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    CsvTable::read(path)?.records(true)
}

/// Writes records under the canonical header. Labels are written as
/// `yes`/`no`; a missing label or phone number becomes an empty cell.
pub fn write_csv<W: Write>(records: &[CustomerRecord], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(Field::ALL.iter().map(|f| f.name()))?;
    for r in records {
        wtr.write_record(Field::ALL.iter().map(|&f| r.render(f)))?;
    }
    wtr.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}
