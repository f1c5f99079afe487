use std::path::PathBuf;

use clap::builder::BoolishValueParser;
use clap::{ArgAction, Args};
use crossmod::derivations::DEFAULT_DERIVATION_CAP;
use crossmod::enumeration::CensusOptions;
use crossmod::group::SearchMode;
use crossmod::report::Format;

/// Options shared by every subcommand. Each flag falls back to an
/// environment variable; an explicit flag wins.
#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Worker threads for census stages.
    #[arg(long, global = true, env = "CROSSMOD_WORKERS")]
    pub workers: Option<usize>,

    /// Directory holding cached censuses and imported catalogs.
    #[arg(long, global = true, env = "CROSSMOD_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Use the unfiltered exhaustive search paths.
    #[arg(long, global = true, env = "CROSSMOD_SLOW", action = ArgAction::SetTrue, value_parser = BoolishValueParser::new())]
    pub slow: bool,

    /// Output format: text, csv or json.
    #[arg(long, global = true, env = "CROSSMOD_FORMAT", default_value = "text")]
    pub format: Format,

    /// Annotate table rows with the matching reference row.
    #[arg(long, global = true, env = "CROSSMOD_PAPER_ROW", action = ArgAction::SetTrue, value_parser = BoolishValueParser::new())]
    pub paper_row: bool,

    /// Group catalog file to use instead of the bundled one.
    #[arg(long, global = true, env = "CROSSMOD_CATALOG")]
    pub catalog: Option<PathBuf>,

    /// Largest group order for derivation enumeration.
    #[arg(long, global = true, env = "CROSSMOD_DERIVATION_CAP", default_value_t = DEFAULT_DERIVATION_CAP)]
    pub derivation_cap: usize,
}

impl Config {
    pub fn mode(&self) -> SearchMode {
        if self.slow {
            SearchMode::BruteForce
        } else {
            SearchMode::Fast
        }
    }

    pub fn census_options(&self) -> CensusOptions {
        CensusOptions { workers: self.workers, mode: self.mode() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[derive(Parser)]
    struct Probe {
        #[command(flatten)]
        config: Config,
    }

    #[test]
    fn defaults_and_mode() {
        let p = Probe::try_parse_from(["x"]).unwrap();
        assert_eq!(p.config.format, Format::Text);
        assert_eq!(p.config.derivation_cap, DEFAULT_DERIVATION_CAP);
        assert_eq!(p.config.mode(), SearchMode::Fast);
        let p = Probe::try_parse_from(["x", "--slow", "--workers", "3"]).unwrap();
        assert_eq!(p.config.census_options(), CensusOptions { workers: Some(3), mode: SearchMode::BruteForce });
        assert!(Probe::try_parse_from(["x", "--format", "xml"]).is_err());
    }
}
