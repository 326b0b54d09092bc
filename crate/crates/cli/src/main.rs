mod args;
mod commands;
mod inputs;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use rcsbr_core::epistemic::{ConstructError, NotStatic, TypeStructureError};
use rcsbr_core::format::FormatError;
use rcsbr_core::separating::{Prop2Error, SeparatingError};
use rcsbr_core::solution::SolveError;
use rcsbr_core::GameError;

use args::{Cli, Command};
use commands::{Ctx, UsageError};

const OK: u8 = 0;
const INVALID: u8 = 1;
const ASSERTION: u8 = 2;
const USAGE: u8 = 3;

/// Echo of the invocation, quoting arguments a shell would split.
fn command_echo(args: &[String]) -> String {
    let quoted: Vec<String> = args
        .iter()
        .map(|a| {
            if !a.is_empty() && a.chars().all(|c| c.is_alphanumeric() || "-_./=:".contains(c)) {
                a.clone()
            } else {
                format!("'{}'", a.replace('\'', r"'\''"))
            }
        })
        .collect();
    std::iter::once("rcsbr".to_string()).chain(quoted).collect::<Vec<_>>().join(" ")
}

fn variant(debug: String) -> String {
    debug.chars().take_while(|c| c.is_alphanumeric()).collect()
}

/// The library error behind `err`, named by its variant, for the first line of a diagnostic.
fn error_kind(err: &anyhow::Error) -> Option<String> {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<GameError>() {
            return Some(variant(format!("{e:?}")));
        }
        if let Some(e) = cause.downcast_ref::<TypeStructureError>() {
            return Some(variant(format!("{e:?}")));
        }
        if let Some(e) = cause.downcast_ref::<SeparatingError>() {
            return Some(variant(format!("{e:?}")));
        }
        if let Some(e) = cause.downcast_ref::<Prop2Error>() {
            return Some(variant(format!("{e:?}")));
        }
        if let Some(e) = cause.downcast_ref::<SolveError>() {
            return Some(variant(format!("{e:?}")));
        }
        if let Some(e) = cause.downcast_ref::<ConstructError>() {
            return Some(variant(format!("{e:?}")));
        }
        if cause.downcast_ref::<NotStatic>().is_some() {
            return Some("NotStatic".into());
        }
        // Transparent wrappers hide their payload from the source chain.
        match cause.downcast_ref::<FormatError>() {
            Some(FormatError::Json(_)) => return Some("MalformedJson".into()),
            Some(FormatError::Game(e)) => return Some(variant(format!("{e:?}"))),
            Some(FormatError::TypeStructure(e)) => return Some(variant(format!("{e:?}"))),
            Some(FormatError::Separating(e)) => return Some(variant(format!("{e:?}"))),
            Some(e) => return Some(variant(format!("{e:?}"))),
            None => {}
        }
    }
    None
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&raw) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => OK,
                _ => USAGE,
            });
        }
    };
    let ctx = Ctx {
        command: command_echo(&raw[1..]),
        certify: cli.certify,
        seed: cli.seed,
    };
    let result = match &cli.command {
        Command::Validate { path, game } => commands::validate(&ctx, path, game.as_deref()),
        Command::Solve { which, game } => commands::solve(&ctx, *which, game),
        Command::Rcsbr {
            game,
            structure,
            rcbr,
            random,
            max_types,
        } => commands::rcsbr_cmd(&ctx, game, structure.as_deref(), *rcbr, *random, *max_types),
        Command::Real {
            game,
            state_space,
            closures,
            classify,
            verify_prop1,
            random,
            max_types,
        } => commands::real(
            &ctx,
            game,
            state_space.as_deref(),
            closures.as_deref(),
            *classify,
            *verify_prop1,
            *random,
            *max_types,
        ),
        Command::Construct {
            game,
            target,
            quadrant,
            out,
        } => commands::construct(&ctx, game, target, quadrant, out),
    };
    match result {
        Ok(report) => {
            let text = if cli.json { report.render_json() } else { report.render_text() };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(INVALID);
            }
            ExitCode::from(if report.all_hold() { OK } else { ASSERTION })
        }
        Err(err) => {
            if let Some(u) = err.downcast_ref::<UsageError>() {
                eprintln!("error: {u}");
                return ExitCode::from(USAGE);
            }
            match error_kind(&err) {
                Some(kind) => eprintln!("error: {kind}: {err:#}"),
                None => eprintln!("error: {err:#}"),
            }
            ExitCode::from(INVALID)
        }
    }
}
