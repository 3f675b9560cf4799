//! A small checker that walks a parsed JSON document and collects every
//! violation instead of stopping at the first.

use ontolab_core::quantum::C64;
use serde_json::{Map, Value};

use crate::error::{FormatError, Violation, Violations};

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Appends a JSON pointer segment, escaping `~` and `/`.
pub fn join(path: &str, key: &str) -> String {
    format!("{path}/{}", key.replace('~', "~0").replace('/', "~1"))
}

pub fn index(path: &str, i: usize) -> String {
    format!("{path}/{i}")
}

#[derive(Debug, Default)]
pub struct Checker {
    violations: Vec<Violation>,
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn report(&mut self, path: &str, message: impl Into<String>) {
        self.violations.push(Violation {
            path: path.to_string(),
            message: message.into(),
        });
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// `Ok(value)` when nothing was reported.
    pub fn finish<T>(self, value: Option<T>) -> Result<T, FormatError> {
        match value {
            Some(v) if self.violations.is_empty() => Ok(v),
            _ => Err(FormatError::Schema(Violations(self.violations))),
        }
    }

    /// Checks that `v` is an object with every `required` key and no key
    /// outside `required` and `optional`.
    pub fn object<'a>(
        &mut self,
        v: &'a Value,
        path: &str,
        required: &[&str],
        optional: &[&str],
    ) -> Option<&'a Map<String, Value>> {
        let Some(map) = v.as_object() else {
            self.report(path, format!("expected an object, found {}", kind(v)));
            return None;
        };
        for key in required {
            if !map.contains_key(*key) {
                self.report(path, format!("missing key `{key}`"));
            }
        }
        for key in map.keys() {
            if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
                self.report(&join(path, key), "unknown key");
            }
        }
        Some(map)
    }

    pub fn array<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a [Value]> {
        match v.as_array() {
            Some(a) => Some(a),
            None => {
                self.report(path, format!("expected an array, found {}", kind(v)));
                None
            }
        }
    }

    pub fn map<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Map<String, Value>> {
        match v.as_object() {
            Some(m) => Some(m),
            None => {
                self.report(path, format!("expected an object, found {}", kind(v)));
                None
            }
        }
    }

    pub fn string<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a str> {
        match v.as_str() {
            Some(s) => Some(s),
            None => {
                self.report(path, format!("expected a string, found {}", kind(v)));
                None
            }
        }
    }

    pub fn number(&mut self, v: &Value, path: &str) -> Option<f64> {
        match v.as_f64() {
            Some(x) => Some(x),
            None => {
                self.report(path, format!("expected a number, found {}", kind(v)));
                None
            }
        }
    }

    pub fn unsigned(&mut self, v: &Value, path: &str) -> Option<usize> {
        match v.as_u64() {
            Some(n) => Some(n as usize),
            None => {
                self.report(
                    path,
                    format!("expected a non-negative integer, found {}", kind(v)),
                );
                None
            }
        }
    }

    pub fn strings(&mut self, v: &Value, path: &str) -> Option<Vec<String>> {
        let items = self.array(v, path)?;
        let mut out = Vec::with_capacity(items.len());
        let mut ok = true;
        for (i, item) in items.iter().enumerate() {
            match self.string(item, &index(path, i)) {
                Some(s) if out.contains(&s.to_string()) => {
                    self.report(&index(path, i), format!("duplicate entry `{s}`"));
                    ok = false;
                }
                Some(s) => out.push(s.to_string()),
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    pub fn numbers(&mut self, v: &Value, path: &str) -> Option<Vec<f64>> {
        let items = self.array(v, path)?;
        let parsed: Vec<Option<f64>> = items
            .iter()
            .enumerate()
            .map(|(i, x)| self.number(x, &index(path, i)))
            .collect();
        parsed.into_iter().collect()
    }

    /// A complex amplitude written as `[re, im]`.
    pub fn complex(&mut self, v: &Value, path: &str) -> Option<C64> {
        let parts = self.numbers(v, path)?;
        if parts.len() != 2 {
            self.report(path, format!("expected [re, im], found {} numbers", parts.len()));
            return None;
        }
        Some(C64::new(parts[0], parts[1]))
    }

    /// A ket: a list of `[re, im]` amplitudes of the given length.
    pub fn ket(&mut self, v: &Value, path: &str, dimension: Option<usize>) -> Option<Vec<C64>> {
        let items = self.array(v, path)?;
        if let Some(d) = dimension {
            if items.len() != d {
                self.report(path, format!("expected {d} amplitudes, found {}", items.len()));
                return None;
            }
        }
        let parsed: Vec<Option<C64>> = items
            .iter()
            .enumerate()
            .map(|(i, a)| self.complex(a, &index(path, i)))
            .collect();
        parsed.into_iter().collect()
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

/// `[re, im]` as JSON.
pub fn complex_value(c: &C64) -> Value {
    Value::Array(vec![c.re.into(), c.im.into()])
}

pub fn ket_value(amplitudes: &[C64]) -> Value {
    Value::Array(amplitudes.iter().map(complex_value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn syntax_errors_carry_position() {
        match parse("{\n  \"a\": [1, 2,\n}") {
            Err(FormatError::Syntax { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column >= 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn object_lists_missing_and_unknown_keys() {
        let mut c = Checker::new();
        c.object(&json!({"b": 1, "c": 2}), "", &["a", "b"], &["d"]);
        let e = c.finish(Some(())).unwrap_err();
        let paths: Vec<&str> = e.violations().iter().map(|v| v.path.as_str()).collect();
        assert_eq!(paths, vec!["", "/c"]);
    }

    #[test]
    fn pointer_escaping() {
        assert_eq!(join("/x", "a/b~c"), "/x/a~1b~0c");
    }

    #[test]
    fn ket_checks_length_and_shape() {
        let mut c = Checker::new();
        assert!(c.ket(&json!([[1, 0], [0, 0]]), "/k", Some(2)).is_some());
        assert!(c.ket(&json!([[1, 0]]), "/k", Some(2)).is_none());
        assert!(c.ket(&json!([[1, 0, 3], "x"]), "/k", Some(2)).is_none());
        assert_eq!(c.finish(Some(())).unwrap_err().violations().len(), 3);
    }
}
