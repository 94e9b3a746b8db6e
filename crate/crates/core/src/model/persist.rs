use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::train::{TrainedModel, TrainingSummary};
use crate::data::EncodingSchema;
use crate::error::{Error, Result};
use crate::nn::Network;

pub const FORMAT_NAME: &str = "churn-mlp";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    topology: Vec<usize>,
    schema: EncodingSchema,
    network: Network,
    summary: TrainingSummary,
}

impl TrainedModel {
    /// Pretty-printed JSON. Floats are written in shortest round-trip form,
    /// so reloading reproduces every parameter bit for bit.
    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            topology: self.network.layer_sizes().to_vec(),
            schema: self.schema.clone(),
            network: self.network.clone(),
            summary: self.summary.clone(),
        };
        let mut text = serde_json::to_string_pretty(&file).map_err(|e| Error::Persist(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Persist(e.to_string()))?;
        if file.format != FORMAT_NAME {
            return Err(Error::Persist(format!(
                "unexpected format `{}`, expected `{FORMAT_NAME}`",
                file.format
            )));
        }
        if file.version != FORMAT_VERSION {
            return Err(Error::Persist(format!(
                "unsupported version {}, expected {FORMAT_VERSION}",
                file.version
            )));
        }
        if file.topology != file.network.layer_sizes() {
            return Err(Error::Persist(format!(
                "declared topology {:?} disagrees with network {:?}",
                file.topology,
                file.network.layer_sizes()
            )));
        }
        TrainedModel::new(file.network, file.schema, file.summary)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
