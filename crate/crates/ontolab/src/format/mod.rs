//! JSON file formats for models, assignment tables, transition matrices and
//! search instances. Readers list every schema violation they find.

mod instance;
mod model;
pub mod schema;
mod table;

use std::path::Path;

pub use self::instance::{instance_from_str, SearchInstance};
pub use self::model::{
    model_from_str, model_from_value, model_to_string, model_to_value, transition_from_str,
    transition_to_string,
};
pub use self::table::{parse_order, table_from_str, table_to_string, table_to_value};

use crate::error::FormatError;

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}
