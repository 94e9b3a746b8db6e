use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// Per-customer key; never fed to the network.
    Identifier,
    Categorical,
    /// yes/no.
    Flag,
    Count,
    Real,
    Label,
}

/// Columns of the churn table, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    State,
    AccountLength,
    AreaCode,
    PhoneNumber,
    InternationalPlan,
    VoiceMailPlan,
    NumVmailMessages,
    TotalDayMinutes,
    TotalDayCalls,
    TotalDayCharge,
    TotalEveMinutes,
    TotalEveCalls,
    TotalEveCharge,
    TotalNightMinutes,
    TotalNightCalls,
    TotalNightCharge,
    TotalIntlMinutes,
    TotalIntlCalls,
    TotalIntlCharge,
    CustomerServiceCalls,
    Churn,
}

impl Field {
    pub const ALL: [Field; 21] = [
        Field::State,
        Field::AccountLength,
        Field::AreaCode,
        Field::PhoneNumber,
        Field::InternationalPlan,
        Field::VoiceMailPlan,
        Field::NumVmailMessages,
        Field::TotalDayMinutes,
        Field::TotalDayCalls,
        Field::TotalDayCharge,
        Field::TotalEveMinutes,
        Field::TotalEveCalls,
        Field::TotalEveCharge,
        Field::TotalNightMinutes,
        Field::TotalNightCalls,
        Field::TotalNightCharge,
        Field::TotalIntlMinutes,
        Field::TotalIntlCalls,
        Field::TotalIntlCharge,
        Field::CustomerServiceCalls,
        Field::Churn,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Field::State => "state",
            Field::AccountLength => "account_length",
            Field::AreaCode => "area_code",
            Field::PhoneNumber => "phone_number",
            Field::InternationalPlan => "international_plan",
            Field::VoiceMailPlan => "voice_mail_plan",
            Field::NumVmailMessages => "num_vmail_messages",
            Field::TotalDayMinutes => "total_day_minutes",
            Field::TotalDayCalls => "total_day_calls",
            Field::TotalDayCharge => "total_day_charge",
            Field::TotalEveMinutes => "total_eve_minutes",
            Field::TotalEveCalls => "total_eve_calls",
            Field::TotalEveCharge => "total_eve_charge",
            Field::TotalNightMinutes => "total_night_minutes",
            Field::TotalNightCalls => "total_night_calls",
            Field::TotalNightCharge => "total_night_charge",
            Field::TotalIntlMinutes => "total_intl_minutes",
            Field::TotalIntlCalls => "total_intl_calls",
            Field::TotalIntlCharge => "total_intl_charge",
            Field::CustomerServiceCalls => "customer_service_calls",
            Field::Churn => "churn",
        }
    }

    pub const fn kind(self) -> FieldKind {
        use Field::*;
        match self {
            State | PhoneNumber => FieldKind::Identifier,
            AreaCode => FieldKind::Categorical,
            InternationalPlan | VoiceMailPlan => FieldKind::Flag,
            AccountLength | NumVmailMessages | TotalDayCalls | TotalEveCalls | TotalNightCalls
            | TotalIntlCalls | CustomerServiceCalls => FieldKind::Count,
            TotalDayMinutes | TotalDayCharge | TotalEveMinutes | TotalEveCharge
            | TotalNightMinutes | TotalNightCharge | TotalIntlMinutes | TotalIntlCharge => {
                FieldKind::Real
            }
            Churn => FieldKind::Label,
        }
    }

    /// Columns a file may omit. The public 5,000-row copy ships without
    /// phone numbers.
    pub const fn is_optional(self) -> bool {
        matches!(self, Field::PhoneNumber)
    }

    /// Alternate header spellings, already in [`normalize_header`] form.
    /// Covers the original UCI headers and the common "number_*" variants.
    const fn aliases(self) -> &'static [&'static str] {
        use Field::*;
        match self {
            PhoneNumber => &["phone"],
            InternationalPlan => &["int_l_plan", "intl_plan"],
            VoiceMailPlan => &["vmail_plan"],
            NumVmailMessages => &["number_vmail_messages", "vmail_message", "vmail_messages"],
            TotalDayMinutes => &["day_mins", "day_minutes"],
            TotalDayCalls => &["day_calls"],
            TotalDayCharge => &["day_charge"],
            TotalEveMinutes => &["eve_mins", "eve_minutes", "total_evening_minutes"],
            TotalEveCalls => &["eve_calls", "total_evening_calls"],
            TotalEveCharge => &["eve_charge", "total_evening_charge"],
            TotalNightMinutes => &["night_mins", "night_minutes"],
            TotalNightCalls => &["night_calls"],
            TotalNightCharge => &["night_charge"],
            TotalIntlMinutes => &["intl_mins", "intl_minutes", "total_international_minutes"],
            TotalIntlCalls => &["intl_calls", "total_international_calls"],
            TotalIntlCharge => &["intl_charge", "total_international_charge"],
            CustomerServiceCalls => &["number_customer_service_calls", "custserv_calls"],
            _ => &[],
        }
    }

    /// Resolves a CSV header (any case, any punctuation) to a field.
    pub fn from_header(header: &str) -> Option<Field> {
        let key = normalize_header(header);
        Field::ALL
            .into_iter()
            .find(|f| f.name() == key || f.aliases().contains(&key.as_str()))
    }
}

/// Lowercases and collapses every run of non-alphanumerics into one `_`,
/// trimming leading and trailing separators: `"Int'l Plan"` → `int_l_plan`.
fn normalize_header(header: &str) -> String {
    let mut out = String::with_capacity(header.len());
    for c in header.trim().chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.is_empty() && !out.ends_with('_') {
            out.push('_');
        }
    }
    while out.ends_with('_') {
        out.pop();
    }
    out
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Field::from_header(s).ok_or_else(|| format!("unknown field `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_spellings() {
        assert_eq!(Field::from_header("Int'l Plan"), Some(Field::InternationalPlan));
        assert_eq!(Field::from_header("Churn?"), Some(Field::Churn));
        assert_eq!(Field::from_header("CustServ Calls"), Some(Field::CustomerServiceCalls));
        assert_eq!(
            Field::from_header("number_customer_service_calls"),
            Some(Field::CustomerServiceCalls)
        );
        assert_eq!(Field::from_header("  Account Length "), Some(Field::AccountLength));
        assert_eq!(Field::from_header("VMail Message"), Some(Field::NumVmailMessages));
        assert_eq!(Field::from_header("Phone"), Some(Field::PhoneNumber));
        assert_eq!(Field::from_header("favourite colour"), None);
    }

    #[test]
    fn canonical_names_resolve_to_themselves() {
        for f in Field::ALL {
            assert_eq!(Field::from_header(f.name()), Some(f));
            assert_eq!(f.name().parse::<Field>(), Ok(f));
        }
    }

    #[test]
    fn serde_uses_canonical_names() {
        for f in Field::ALL {
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.name()));
        }
    }
}
