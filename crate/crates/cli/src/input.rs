use std::path::Path;

use frobdiv::algebra::{build_field, parse_poly, Ambient, VarietySpec};
use frobdiv::counting::DEFAULT_BUDGET;
use serde::Deserialize;

/// Problems with a variety file, always tied to a location in it.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {location}: {source}")]
    Field {
        path: String,
        location: String,
        source: frobdiv::Error,
    },
}

/// On-disk description of one variety.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyFile {
    pub p: u64,
    pub e: u32,
    pub ambient: Ambient,
    pub n: usize,
    pub polys: Vec<String>,
    #[serde(default, alias = "dim_override")]
    pub dim: Option<i64>,
    #[serde(default)]
    pub budget: Option<u64>,
}

/// A parsed file: the variety plus the optional settings it carries.
pub struct Loaded {
    pub spec: VarietySpec,
    pub dim: Option<i64>,
    pub budget: u64,
}

pub fn load(path: &Path) -> Result<Loaded, InputError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: name.clone(),
        source,
    })?;
    parse(&name, &text)
}

/// 1-based line of the first occurrence of `needle` in `text`.
fn line_of(text: &str, needle: &str) -> Option<usize> {
    text.find(needle)
        .map(|i| text[..i].matches('\n').count() + 1)
}

pub fn parse(name: &str, text: &str) -> Result<Loaded, InputError> {
    let file: VarietyFile = serde_json::from_str(text).map_err(|e| InputError::Json {
        path: name.into(),
        line: e.line(),
        column: e.column(),
        message: e
            .to_string()
            .split(" at line ")
            .next()
            .unwrap_or_default()
            .to_string(),
    })?;
    let located = |key: &str, source: frobdiv::Error| {
        let location = match line_of(text, &format!("\"{key}\"")) {
            Some(l) => format!("line {l}, field `{key}`"),
            None => format!("field `{key}`"),
        };
        InputError::Field {
            path: name.into(),
            location,
            source,
        }
    };
    let field = build_field(file.p, file.e).map_err(|err| {
        let key = if matches!(err, frobdiv::Error::NotPrime(_)) {
            "p"
        } else {
            "e"
        };
        located(key, err)
    })?;
    let slots = file.ambient.slots(file.n);
    let mut polys = Vec::with_capacity(file.polys.len());
    for (i, s) in file.polys.iter().enumerate() {
        let f = parse_poly(s, slots, file.ambient.style()).map_err(|source| {
            let quoted = serde_json::to_string(s).expect("string serializes");
            let location = match line_of(text, &quoted) {
                Some(l) => format!("line {l}, polys[{i}]"),
                None => format!("polys[{i}]"),
            };
            InputError::Field {
                path: name.into(),
                location,
                source,
            }
        })?;
        polys.push(f);
    }
    let spec = VarietySpec::new(field, file.ambient, file.n, &polys).map_err(|err| {
        let key = match err {
            frobdiv::Error::NonHomogeneous { index } => format!("polys[{index}]"),
            frobdiv::Error::InvalidVariety(_) if file.polys.is_empty() => "polys".into(),
            frobdiv::Error::InvalidVariety(_) => "n".into(),
            _ => "polys".into(),
        };
        located(&key, err)
    })?;
    Ok(Loaded {
        spec,
        dim: file.dim,
        budget: file.budget.unwrap_or(DEFAULT_BUDGET),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_minimal_file() {
        let l = parse(
            "t",
            r#"{"p": 3, "e": 1, "ambient": "affine", "n": 2, "polys": ["x1*x2 - 1"]}"#,
        )
        .unwrap();
        assert_eq!(l.spec.q(), 3);
        assert_eq!(l.budget, DEFAULT_BUDGET);
        assert_eq!(l.dim, None);
    }

    #[test]
    fn syntax_error_is_located() {
        let text = "{\n  \"p\": 3, \"e\": 1, \"ambient\": \"affine\", \"n\": 2,\n  \"polys\": [\"x1\",\n    \"x1 +* x2\"]\n}";
        let msg = parse("t.json", text).err().unwrap().to_string();
        assert!(msg.contains("line 4, polys[1]"), "{msg}");
        assert!(msg.contains("position"), "{msg}");
    }

    #[test]
    fn bad_prime_and_json() {
        let msg = parse(
            "t",
            r#"{"p": 4, "e": 1, "ambient": "affine", "n": 1, "polys": ["x1"]}"#,
        )
        .err()
        .unwrap()
        .to_string();
        assert!(msg.contains("field `p`"), "{msg}");
        let msg = parse("t", "{\"p\": 3,\n \"q\": 1}")
            .err()
            .unwrap()
            .to_string();
        assert!(msg.starts_with("t:2:"), "{msg}");
    }
}
