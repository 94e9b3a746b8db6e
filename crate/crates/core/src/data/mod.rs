//! Churn CSV ingest, feature encoding and train/holdout partitioning.

mod field;
mod record;
mod schema;
mod split;

pub use field::{Field, FieldKind};
pub use record::{parse_csv, write_csv, CsvTable, CustomerRecord, Dataset, MAX_REJECTED_FRACTION};
pub use schema::{EncodeStats, EncodedExample, Encoding, EncodingSchema, FieldEncoding};
pub use split::{split, split_indices};
