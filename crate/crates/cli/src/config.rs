//! Optional JSON config file with one section per subcommand, e.g.
//! `{"simulate": {"q": 0.5, "cA": 0.0}, "sweep": {"replicas": 10}}`.
//! Keys match the long flag names; command-line flags always win.

use std::path::Path;

use serde_json::Value;

use crate::{read_file, CliError};

pub struct ConfigFile {
    root: Option<Value>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let root = match path {
            None => None,
            Some(path) => {
                let text = read_file(path)?;
                let value: Value = serde_json::from_str(&text).map_err(|e| {
                    CliError::validation(format!("config {}: {e}", path.display()))
                })?;
                if !value.is_object() {
                    return Err(CliError::validation(format!(
                        "config {}: expected a JSON object",
                        path.display()
                    )));
                }
                Some(value)
            }
        };
        Ok(ConfigFile { root })
    }

    pub fn section(&self, name: &'static str) -> Section<'_> {
        Section {
            name,
            value: self.root.as_ref().and_then(|root| root.get(name)),
        }
    }
}

/// Typed access to one subcommand's defaults.
#[derive(Clone, Copy)]
pub struct Section<'a> {
    name: &'static str,
    value: Option<&'a Value>,
}

impl<'a> Section<'a> {
    fn get(&self, key: &str) -> Option<&'a Value> {
        self.value.and_then(|v| v.get(key))
    }

    fn type_err(&self, key: &str, expected: &str) -> CliError {
        CliError::validation(format!(
            "config section '{}': key '{key}' is not {expected}",
            self.name
        ))
    }

    pub fn string(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(self.type_err(key, "a string")),
        }
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_f64()
                .map(Some)
                .ok_or_else(|| self.type_err(key, "a number")),
            Some(_) => Err(self.type_err(key, "a number")),
        }
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_u64()
                .map(Some)
                .ok_or_else(|| self.type_err(key, "a non-negative integer")),
            Some(_) => Err(self.type_err(key, "a non-negative integer")),
        }
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        Ok(self.u64(key)?.map(|v| v as usize))
    }

    pub fn path(&self, key: &str) -> Result<Option<std::path::PathBuf>, CliError> {
        Ok(self.string(key)?.map(std::path::PathBuf::from))
    }
}
