//! Run configuration: defaults, then an optional TOML file, then flags.

use std::fs;
use std::path::{Path, PathBuf};

use natlog::engine::{Engine, SearchConfig};
use natlog::kb::{load_relations, LexicalResource};
use natlog::preprocess::{RewriteTable, TransformConfig};
use natlog::syntax::Lexicon;
use serde::Deserialize;

use crate::CliError;

/// Settings that may come from the config file. Every field is optional so
/// a file can override just part of the defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub lexicon: Option<PathBuf>,
    pub resource: Option<PathBuf>,
    pub rewrites: Option<PathBuf>,
    pub relations: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub overlay: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub depth: Option<usize>,
    pub max_generated: Option<usize>,
    pub strict: Option<bool>,
    pub transforms: Option<String>,
    pub backoff: Option<String>,
    pub threshold: Option<f64>,
    pub seed: Option<u64>,
    pub fraction: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = read(path)?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` win.
    pub fn overlay(self, over: FileConfig) -> FileConfig {
        FileConfig {
            lexicon: over.lexicon.or(self.lexicon),
            resource: over.resource.or(self.resource),
            rewrites: over.rewrites.or(self.rewrites),
            relations: over.relations.or(self.relations),
            corpus: over.corpus.or(self.corpus),
            overlay: over.overlay.or(self.overlay),
            output_dir: over.output_dir.or(self.output_dir),
            depth: over.depth.or(self.depth),
            max_generated: over.max_generated.or(self.max_generated),
            strict: over.strict.or(self.strict),
            transforms: over.transforms.or(self.transforms),
            backoff: over.backoff.or(self.backoff),
            threshold: over.threshold.or(self.threshold),
            seed: over.seed.or(self.seed),
            fraction: over.fraction.or(self.fraction),
        }
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub lexicon: Option<PathBuf>,
    pub resource: Option<PathBuf>,
    pub rewrites: Option<PathBuf>,
    pub relations: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub overlay: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub search: SearchConfig,
    pub transforms: TransformConfig,
    pub backoff: String,
    pub threshold: f64,
    pub seed: u64,
    pub fraction: f64,
}

impl RunConfig {
    pub fn resolve(file: FileConfig) -> Result<RunConfig, CliError> {
        let mut search = SearchConfig::default();
        if let Some(d) = file.depth {
            search.depth = d;
        }
        if let Some(m) = file.max_generated {
            search.max_generated = m;
        }
        if let Some(s) = file.strict {
            search.strict_contradictions = s;
        }
        let transforms = match &file.transforms {
            Some(spec) => TransformConfig::parse_list(spec).map_err(CliError::Usage)?,
            None => TransformConfig::default(),
        };
        let threshold = file.threshold.unwrap_or(0.95);
        if !(0.0..=1.0).contains(&threshold) {
            return Err(CliError::Usage(format!("threshold {threshold} is outside [0, 1]")));
        }
        let config = RunConfig {
            lexicon: file.lexicon,
            resource: file.resource,
            rewrites: file.rewrites,
            relations: file.relations,
            corpus: file.corpus,
            overlay: file.overlay,
            output_dir: file.output_dir,
            search,
            transforms,
            backoff: file.backoff.unwrap_or_else(|| "neutral".into()),
            threshold,
            seed: file.seed.unwrap_or(0),
            fraction: file.fraction.unwrap_or(1.0),
        };
        for path in [
            &config.lexicon,
            &config.resource,
            &config.rewrites,
            &config.relations,
            &config.corpus,
            &config.overlay,
        ]
        .into_iter()
        .flatten()
        {
            if !path.is_file() {
                return Err(CliError::MissingFile(path.clone()));
            }
        }
        Ok(config)
    }

    pub fn engine(&self) -> Result<Engine, CliError> {
        let lexicon = match &self.lexicon {
            Some(p) => Lexicon::from_tsv(&read(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
            None => Lexicon::bundled(),
        };
        let resource = match &self.resource {
            Some(p) => {
                LexicalResource::from_tsv(&read(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
            }
            None => LexicalResource::bundled(),
        };
        let rewrites = match &self.rewrites {
            Some(p) => {
                RewriteTable::from_tsv(&read(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
            }
            None => RewriteTable::bundled(),
        };
        let extra = match &self.relations {
            Some(p) => {
                load_relations(&read(p)?, &lexicon).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
            }
            None => Vec::new(),
        };
        Ok(Engine {
            lexicon,
            resource,
            rewrites,
            extra,
            config: self.search.clone(),
            transforms: self.transforms,
        })
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::MissingFile(path.to_path_buf()),
        _ => CliError::Io(path.to_path_buf(), e),
    })
}
