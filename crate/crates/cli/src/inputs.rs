//! Reading input files while fingerprinting them.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rcsbr_core::format::{parse_game, parse_state_space_spec, parse_type_structure, state_space_from_spec};
use rcsbr_core::{DynamicGame, StateSpace, TypeStructure};
use sha2::{Digest, Sha256};

#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    /// Contents of `path`, folded into the digest with a length prefix.
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.absorb(text.as_bytes());
        Ok(text)
    }

    pub fn absorb(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }

    pub fn game(&mut self, path: &Path) -> Result<DynamicGame> {
        let text = self.read(path)?;
        parse_game(&text).with_context(|| format!("invalid game {}", path.display()))
    }

    pub fn structure(&mut self, game: &DynamicGame, path: &Path) -> Result<TypeStructure> {
        let text = self.read(path)?;
        parse_type_structure(game, &text).with_context(|| format!("invalid type structure {}", path.display()))
    }

    /// A state space and its host, which is resolved relative to the state-space file.
    pub fn state_space(&mut self, game: &DynamicGame, path: &Path) -> Result<(TypeStructure, StateSpace, PathBuf)> {
        let text = self.read(path)?;
        let spec = parse_state_space_spec(&text).with_context(|| format!("invalid state space {}", path.display()))?;
        let host_path = path.parent().unwrap_or(Path::new(".")).join(&spec.host);
        let host = self.structure(game, &host_path)?;
        let ss = state_space_from_spec(game, &host, &spec)
            .with_context(|| format!("invalid state space {}", path.display()))?;
        Ok((host, ss, host_path))
    }
}
