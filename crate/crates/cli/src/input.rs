use serde_json::Value;
use twobridge::contfrac::{parse_fraction, parse_int};
use twobridge::signature::{SumEntry, SumSpec};
use twobridge::{ContinuedFraction, Error, Int, Result};

/// `p/q`, or a bare integer `p` meaning `p/1`.
pub fn fraction(s: &str) -> Result<(Int, Int)> {
    if s.contains('/') {
        parse_fraction(s)
    } else {
        Ok((parse_int(s)?, Int::from(1)))
    }
}

pub fn coefficients(s: &str) -> Result<ContinuedFraction> {
    s.parse()
}

/// One batch line: `p/q` or `cf: c1,c2,...`.
#[derive(Debug, Clone)]
pub enum BatchItem {
    Fraction(Int, Int),
    Cf(ContinuedFraction),
}

/// Parses a batch file, skipping blank lines and `#` comments. Each item
/// keeps its 1-based line number.
pub fn batch(text: &str) -> Result<Vec<(usize, BatchItem)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| Error::Parse(format!("line {}: {e}", i + 1));
        let item = match line.strip_prefix("cf:") {
            Some(rest) => BatchItem::Cf(coefficients(rest).map_err(at)?),
            None => {
                let (p, q) = fraction(line).map_err(at)?;
                BatchItem::Fraction(p, q)
            }
        };
        out.push((i + 1, item));
    }
    Ok(out)
}

/// Sum specification as text lines or as a JSON array of `{p, q, mult}`
/// objects, whose numbers may be integers or decimal strings.
pub fn sum_spec(text: &str) -> Result<SumSpec> {
    let trimmed = text.trim_start();
    if !trimmed.starts_with('[') {
        return text.parse();
    }
    let value: Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("sum spec JSON: {e}")))?;
    let items = value.as_array().ok_or_else(|| Error::Parse("sum spec JSON must be an array".into()))?;
    let mut entries = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let field = |name: &str, required: bool| -> Result<Option<Int>> {
            match item.get(name) {
                None if required => Err(Error::Parse(format!("sum spec entry {i}: missing field {name:?}"))),
                None => Ok(None),
                Some(Value::String(s)) => parse_int(s).map(Some),
                Some(Value::Number(n)) => parse_int(&n.to_string()).map(Some),
                Some(other) => Err(Error::Parse(format!("sum spec entry {i}: {name} is {other}, expected an integer"))),
            }
        };
        let p = field("p", true)?.expect("required");
        let q = field("q", true)?.expect("required");
        let multiplicity = field("mult", false)?.unwrap_or_else(|| Int::from(1));
        entries.push(SumEntry { p, q, multiplicity });
    }
    SumSpec::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_and_integers() {
        assert_eq!(fraction("23/10").unwrap(), (Int::from(23), Int::from(10)));
        assert_eq!(fraction("-7").unwrap(), (Int::from(-7), Int::from(1)));
        assert!(fraction("23/").is_err());
        assert!(fraction("a/b").is_err());
    }

    #[test]
    fn batch_lines() {
        let items = batch("# header\n23/10\n\ncf: 2,-3,3\n").unwrap();
        assert_eq!(items.len(), 2);
        assert_eq!(items[0].0, 2);
        assert!(matches!(items[1].1, BatchItem::Cf(_)));
        let err = batch("23/10\ncf: 1,0,1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn json_sum_spec() {
        let spec = sum_spec(r#"[{"p": 35, "q": "16"}, {"p": "283", "q": 34, "mult": -2}]"#).unwrap();
        assert_eq!(spec.entries.len(), 2);
        assert_eq!(spec.entries[1].multiplicity, Int::from(-2));
        assert!(sum_spec(r#"[{"p": 35}]"#).is_err());
        assert!(sum_spec(r#"[{"p": 36, "q": 5}]"#).is_err());
    }
}
