use crate::{CreditError, Result};

/// Attribute names in file order, and whether each is numeric.
pub const ATTRIBUTES: [(&str, bool); 20] = [
    ("checking_status", false),
    ("duration", true),
    ("credit_history", false),
    ("purpose", false),
    ("credit_amount", true),
    ("savings", false),
    ("employment_since", false),
    ("installment_rate", true),
    ("personal_status", false),
    ("other_debtors", false),
    ("residence_duration", true),
    ("property", false),
    ("age", true),
    ("other_installment_plans", false),
    ("housing", false),
    ("existing_credits", true),
    ("job", false),
    ("people_liable", true),
    ("telephone", false),
    ("foreign_worker", false),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RawCreditRecord {
    /// Categorical codes (`A11`, …) or integer literals, as in the file.
    pub attributes: Vec<String>,
    /// 0 = low risk, 1 = high risk.
    pub label: u8,
}

/// Parses `german.data`: 20 attributes then the outcome (1 good, 2 bad) per line.
pub fn parse_german_data(text: &str) -> Result<Vec<RawCreditRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 21 {
            return Err(CreditError::Parse { line, msg: format!("expected 21 fields, found {}", fields.len()) });
        }
        for (k, (name, numeric)) in ATTRIBUTES.iter().enumerate() {
            if *numeric && fields[k].parse::<f64>().is_err() {
                return Err(CreditError::Parse { line, msg: format!("{name} is not numeric: {:?}", fields[k]) });
            }
        }
        let label = match fields[20] {
            "1" => 0,
            "2" => 1,
            code => return Err(CreditError::UnknownOutcome { line, code: code.into() }),
        };
        out.push(RawCreditRecord { attributes: fields[..20].iter().map(|s| s.to_string()).collect(), label });
    }
    Ok(out)
}
