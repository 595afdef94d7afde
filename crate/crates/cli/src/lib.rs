//! Argument handling and command execution for the `kbsim` binary.
//!
//! [`run`] is pure: it takes a validated [`CliConfig`] and the input file's
//! contents and returns the exit status together with everything that should
//! be written to standard output and standard error.

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kbsim_core::report::{render_csv, render_json, render_space_csv, render_text, Metadata, Report};
use kbsim_core::{
    knowledge_space, parse_with_warnings, property_space, source_information, ComparisonMode,
    Direction, IdentifiabilityRule, Knowledge, KnowledgeBase, MatchMode, SimilarityError,
};

#[derive(Debug, Parser)]
#[command(name = "kbsim", version, about = "Qualitative similarity between rule-based knowledges")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Parse a knowledge base and report every error.
    Validate(CommonArgs),
    /// Compare two knowledges rule by rule.
    Compare(CommonArgs),
    /// Compare every ordered pair of knowledges.
    Matrix(CommonArgs),
    /// Category configuration and super-category of a knowledge pair.
    Categorize(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Knowledge base file (`.kb`).
    pub file: PathBuf,
    /// Left knowledge (columns of the grid).
    #[arg(long, value_name = "NAME")]
    pub left: Option<String>,
    /// Right knowledge (rows of the grid).
    #[arg(long, value_name = "NAME")]
    pub right: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Use one-sided comparison (default for compare and categorize).
    #[arg(long)]
    pub directional: bool,
    /// Match literals up to renaming of variables.
    #[arg(long)]
    pub alpha: bool,
    /// Identifiable only when all three class sets are non-empty.
    #[arg(long)]
    pub strict_identifiability: bool,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Compare,
    Matrix,
    Categorize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Usage = 1,
    Parse = 2,
    Semantic = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub input: PathBuf,
    /// Present exactly for compare and categorize.
    pub pair: Option<(String, String)>,
    pub format: Format,
    pub directional: bool,
    pub alpha: bool,
    pub strict_identifiability: bool,
    pub output: Option<PathBuf>,
}

impl CliConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, String> {
        let (command, args) = match cli.command {
            CommandArgs::Validate(a) => (Command::Validate, a),
            CommandArgs::Compare(a) => (Command::Compare, a),
            CommandArgs::Matrix(a) => (Command::Matrix, a),
            CommandArgs::Categorize(a) => (Command::Categorize, a),
        };
        let pair = match (command, args.left, args.right) {
            (Command::Compare | Command::Categorize, Some(l), Some(r)) => Some((l, r)),
            (Command::Compare | Command::Categorize, _, _) => {
                return Err("both --left and --right are required".into())
            }
            (_, None, None) => None,
            _ => return Err("--left/--right are only accepted by compare and categorize".into()),
        };
        if command == Command::Categorize && args.format == Format::Csv {
            return Err("categorize supports --format text or json".into());
        }
        Ok(CliConfig {
            command,
            input: args.file,
            pair,
            format: args.format,
            directional: args.directional,
            alpha: args.alpha,
            strict_identifiability: args.strict_identifiability,
            output: args.output,
        })
    }

    /// compare and categorize are always directional; matrix is symmetric
    /// unless `--directional` is given.
    pub fn mode(&self) -> ComparisonMode {
        let direction = match self.command {
            Command::Matrix if !self.directional => Direction::Symmetric,
            _ => Direction::Directional,
        };
        let matching = if self.alpha { MatchMode::Alpha } else { MatchMode::Exact };
        ComparisonMode { matching, direction }
    }

    fn input_name(&self) -> String {
        self.input.display().to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(status: ExitStatus, stderr: String) -> Self {
        Outcome { status, stdout: String::new(), stderr }
    }
}

fn nearest<'a>(name: &str, kb: &'a KnowledgeBase) -> Option<&'a str> {
    kb.knowledges()
        .iter()
        .map(Knowledge::name)
        .min_by_key(|candidate| (strsim::levenshtein(name, candidate), *candidate))
}

fn lookup<'a>(kb: &'a KnowledgeBase, name: &str) -> Result<&'a Knowledge, String> {
    kb.get(name).ok_or_else(|| {
        let mut msg = format!("error: unknown knowledge `{name}`");
        if let Some(s) = nearest(name, kb) {
            write!(msg, "; did you mean `{s}`?").unwrap();
        }
        msg.push('\n');
        msg
    })
}

pub fn run(config: &CliConfig, contents: &str) -> Outcome {
    let input = config.input_name();
    let parsed = match parse_with_warnings(contents) {
        Ok(p) => p,
        Err(errors) => {
            let mut stderr = String::new();
            for e in &errors {
                writeln!(stderr, "{input}:{}:{}: error[{}]: {}", e.line, e.column, e.kind, e.message)
                    .unwrap();
            }
            writeln!(stderr, "{} error(s)", errors.len()).unwrap();
            return Outcome::fail(ExitStatus::Parse, stderr);
        }
    };
    let mut stderr = String::new();
    for w in &parsed.warnings {
        writeln!(stderr, "{input}:{}:{}: warning: {}", w.line, w.column, w.message).unwrap();
    }
    let kb = parsed.knowledge_base;
    let mode = config.mode();
    let metadata = Metadata::new(Some(input.clone()), mode);

    let result = match config.command {
        Command::Validate => Ok(format!(
            "{input}: ok, {} knowledges, {} properties\n",
            kb.len(),
            kb.property_count()
        )),
        Command::Compare | Command::Categorize => {
            let (left, right) = config.pair.as_ref().expect("validated by CliConfig");
            compare(config, &kb, left, right, metadata)
        }
        Command::Matrix => matrix(config, &kb, metadata, &mut stderr),
    };

    match result {
        Ok(stdout) => Outcome { status: ExitStatus::Success, stdout, stderr },
        Err(msg) => {
            stderr.push_str(&msg);
            Outcome::fail(ExitStatus::Semantic, stderr)
        }
    }
}

fn compare(
    config: &CliConfig,
    kb: &KnowledgeBase,
    left: &str,
    right: &str,
    metadata: Metadata,
) -> Result<String, String> {
    let (l, r) = (lookup(kb, left)?, lookup(kb, right)?);
    let m = property_space(l, r, config.mode()).map_err(|e| format!("error: {e}\n"))?;
    let report = if config.command == Command::Categorize {
        let rule = if config.strict_identifiability {
            IdentifiabilityRule::Strict
        } else {
            IdentifiabilityRule::Union
        };
        Report::category(&m, rule, metadata)
    } else {
        Report::pair(&m, metadata)
    };
    Ok(match config.format {
        Format::Text => render_text(&report),
        Format::Json => render_json(&report),
        Format::Csv => render_csv(&m),
    })
}

fn matrix(
    config: &CliConfig,
    kb: &KnowledgeBase,
    metadata: Metadata,
    stderr: &mut String,
) -> Result<String, String> {
    let space = knowledge_space(kb, config.mode()).map_err(|e| format!("error: {e}\n"))?;
    let source = match source_information(&space) {
        Ok(s) => Some(s),
        Err(SimilarityError::DirectionalSpace) => {
            stderr.push_str("note: source information is omitted for directional spaces\n");
            None
        }
        Err(e) => return Err(format!("error: {e}\n")),
    };
    let report = Report::space(&space, source.as_ref(), metadata);
    Ok(match config.format {
        Format::Text => render_text(&report),
        Format::Json => render_json(&report),
        Format::Csv => render_space_csv(&space),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "knowledge K1 { a :- x. b :- y. }\nknowledge K2 { c :- y, w. c :- x, y. a :- x. }\n";

    fn config(args: &[&str]) -> Result<CliConfig, String> {
        let cli = Cli::try_parse_from(std::iter::once("kbsim").chain(args.iter().copied()))
            .map_err(|e| e.to_string())?;
        CliConfig::from_cli(cli)
    }

    #[test]
    fn pair_flags_are_validated() {
        assert!(config(&["compare", "f.kb", "--left", "A"]).is_err());
        assert!(config(&["categorize", "f.kb"]).is_err());
        assert!(config(&["matrix", "f.kb", "--left", "A"]).is_err());
        assert!(config(&["validate", "f.kb", "--right", "A"]).is_err());
        assert!(config(&["categorize", "f.kb", "--left", "A", "--right", "B", "--format", "csv"]).is_err());
        let c = config(&["compare", "f.kb", "--left", "A", "--right", "B"]).unwrap();
        assert_eq!(c.pair, Some(("A".into(), "B".into())));
    }

    #[test]
    fn default_modes() {
        let compare = config(&["compare", "f.kb", "--left", "A", "--right", "B"]).unwrap();
        assert_eq!(compare.mode(), ComparisonMode::directional());
        let matrix = config(&["matrix", "f.kb"]).unwrap();
        assert_eq!(matrix.mode(), ComparisonMode::symmetric());
        let matrix = config(&["matrix", "f.kb", "--directional", "--alpha"]).unwrap();
        assert_eq!(
            matrix.mode(),
            ComparisonMode::directional().with_matching(MatchMode::Alpha)
        );
    }

    #[test]
    fn compare_json_signature() {
        let c = config(&["compare", "ex.kb", "--left", "K1", "--right", "K2", "--format", "json"]).unwrap();
        let out = run(&c, EXAMPLE);
        assert_eq!(out.status, ExitStatus::Success);
        assert!(out.stdout.contains(r#""signature":{"equal":1,"similar":3,"different":2}"#));
        assert!(out.stdout.contains(r#""input":"ex.kb""#));
    }

    #[test]
    fn unknown_name_suggests_nearest() {
        let c = config(&["compare", "ex.kb", "--left", "K1", "--right", "k2"]).unwrap();
        let out = run(&c, EXAMPLE);
        assert_eq!(out.status, ExitStatus::Semantic);
        assert!(out.stderr.contains("unknown knowledge `k2`; did you mean `K2`?"));
        assert!(out.stdout.is_empty());
    }

    #[test]
    fn self_comparison_is_semantic_error() {
        let c = config(&["compare", "ex.kb", "--left", "K1", "--right", "K1"]).unwrap();
        assert_eq!(run(&c, EXAMPLE).status, ExitStatus::Semantic);
    }

    #[test]
    fn matrix_needs_two_knowledges() {
        let c = config(&["matrix", "one.kb"]).unwrap();
        let out = run(&c, "knowledge A { a :- b. }");
        assert_eq!(out.status, ExitStatus::Semantic);
        assert!(out.stderr.contains("at least 2 knowledges"));
    }

    #[test]
    fn parse_errors_all_reported() {
        let c = config(&["validate", "bad.kb"]).unwrap();
        let out = run(&c, "knowledge A {\n  !a :- b.\n  c.\n}\n");
        assert_eq!(out.status, ExitStatus::Parse);
        assert!(out.stderr.contains("bad.kb:2:3: error[negated-head]"));
        assert!(out.stderr.contains("bad.kb:3:3: error[empty-body]"));
        assert!(out.stderr.contains("2 error(s)"));
    }

    #[test]
    fn validate_empty() {
        let c = config(&["validate", "empty.kb"]).unwrap();
        let out = run(&c, "");
        assert_eq!(out.status, ExitStatus::Success);
        assert!(out.stdout.contains("0 knowledges"));
    }

    #[test]
    fn empty_knowledge_warning() {
        let c = config(&["validate", "w.kb"]).unwrap();
        let out = run(&c, "knowledge A { }");
        assert_eq!(out.status, ExitStatus::Success);
        assert!(out.stderr.contains("w.kb:1:1: warning: knowledge `A` has no properties"));
    }

    #[test]
    fn directional_matrix_omits_source() {
        let c = config(&["matrix", "ex.kb", "--directional", "--format", "json"]).unwrap();
        let out = run(&c, EXAMPLE);
        assert_eq!(out.status, ExitStatus::Success);
        assert!(out.stdout.contains(r#""source_information":null"#));
        assert!(out.stderr.contains("omitted for directional"));
    }

    #[test]
    fn categorize_strict() {
        let kb = "knowledge A { a :- x. } knowledge B { a :- x. }";
        let c = config(&["categorize", "f.kb", "--left", "A", "--right", "B", "--strict-identifiability"])
            .unwrap();
        let out = run(&c, kb);
        assert!(out.stdout.contains("identifiable: no (rule: strict)"));
        assert!(out.stdout.contains("super-category: case 1 (equal)"));
        let c = config(&["categorize", "f.kb", "--left", "A", "--right", "B"]).unwrap();
        assert!(run(&c, kb).stdout.contains("identifiable: yes (rule: union)"));
    }
}
