use serde_json::{json, Value};
use taut_core::Error as CoreError;

/// Exit codes: 0 success, 1 verification failure, 2 usage, 3 resource guard.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{source}")]
    Core {
        module: &'static str,
        #[source]
        source: CoreError,
    },
    #[error("{detail}")]
    Verification {
        module: &'static str,
        detail: String,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn core(module: &'static str) -> impl FnOnce(CoreError) -> CliError {
        move |source| CliError::Core { module, source }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core { source, .. } => match source {
                CoreError::ResourceGuard(_) => "resource_guard",
                CoreError::Verification(_) => "verification",
                _ => "usage",
            },
            CliError::Verification { .. } => "verification",
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => "io",
        }
    }

    pub fn module(&self) -> Option<&'static str> {
        match self {
            CliError::Core { module, .. } | CliError::Verification { module, .. } => Some(module),
            _ => None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "usage" => 2,
            "resource_guard" => 3,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind(),
                "module": self.module(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        })
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let guard = CliError::core("zip_oracle")(CoreError::ResourceGuard("big".into()));
        assert_eq!((guard.kind(), guard.exit_code()), ("resource_guard", 3));
        let bad = CliError::core("weyl")(CoreError::InvalidArgument("r".into()));
        assert_eq!(bad.exit_code(), 2);
        let v = CliError::Verification {
            module: "taut_ring",
            detail: "x".into(),
        };
        assert_eq!(v.exit_code(), 1);
        assert_eq!(v.to_json()["error"]["module"], "taut_ring");
        assert_eq!(
            CliError::Usage("u".into()).to_json()["error"]["module"],
            Value::Null
        );
    }
}
