//! Front end for `qbps`: argument handling, dispatch and rendering.

pub mod args;
pub mod commands;
pub mod render;

use std::collections::HashSet;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use commands::{CliError, Output};
use render::{render, RunReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;

/// Captured result of one invocation.
#[derive(Debug)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl RunOutput {
    fn usage(msg: String) -> Self {
        Self {
            stdout: String::new(),
            stderr: msg,
            code: EXIT_USAGE,
        }
    }
}

const SWITCHES: [&str; 2] = ["timing", "unchecked"];

fn config_path(argv: &[String]) -> Option<String> {
    argv.iter().enumerate().find_map(|(k, a)| {
        if a == "--config" {
            argv.get(k + 1).cloned()
        } else {
            a.strip_prefix("--config=").map(str::to_string)
        }
    })
}

/// Append `--key=value` for every config entry whose flag is absent from `argv`.
pub fn merge_config(mut argv: Vec<String>, text: &str) -> Result<Vec<String>, String> {
    let given: HashSet<String> = argv
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", k + 1))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key == "config" {
            return Err(format!(
                "config line {}: nested config files are not supported",
                k + 1
            ));
        }
        if given.contains(&key) {
            continue;
        }
        if SWITCHES.contains(&key.as_str()) {
            match value {
                "true" => argv.push(format!("--{key}")),
                "false" => {}
                _ => {
                    return Err(format!(
                        "config line {}: {key} must be true or false",
                        k + 1
                    ))
                }
            }
        } else {
            argv.push(format!("--{key}={value}"));
        }
    }
    Ok(argv)
}

fn params<T: serde::Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).expect("serializable parameters")
}

fn dispatch(command: &Command) -> Result<(String, serde_json::Value, Output), CliError> {
    Ok(match command {
        Command::Generators(a) => ("generators".into(), params(a), commands::generators(a)?),
        Command::Windows(a) => ("windows".into(), params(a), commands::windows(a)?),
        Command::Fiber(a) => ("fiber".into(), params(a), commands::fiber(a)?),
        Command::Sod(a) => ("sod".into(), params(a), commands::sod(a)?),
        Command::Series(a) => ("series".into(), params(a), commands::series(a)?),
        Command::Verify(a) => ("verify".into(), params(a), commands::verify(a)?),
    })
}

fn exit_code(pass: Option<bool>) -> u8 {
    if pass == Some(false) {
        EXIT_VERIFY
    } else {
        EXIT_OK
    }
}

/// Run with `argv[0]` being the program name.
pub fn run(argv: Vec<String>) -> RunOutput {
    let argv = match config_path(&argv) {
        Some(path) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    return RunOutput::usage(format!("error: cannot read config {path}: {e}\n"))
                }
            };
            match merge_config(argv, &text) {
                Ok(a) => a,
                Err(e) => return RunOutput::usage(format!("error: {e}\n")),
            }
        }
        None => argv,
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                _ => RunOutput::usage(text),
            };
        }
    };
    let format = cli.format.unwrap_or(Format::Json);
    let pool = match cli.jobs {
        Some(0) => return RunOutput::usage("error: --jobs must be at least 1\n".into()),
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .expect("thread pool");
    let start = Instant::now();
    let result = pool.install(|| dispatch(&cli.command));
    let elapsed = start.elapsed();
    let (command, params, out) = match result {
        Ok(x) => x,
        Err(e) => return RunOutput::usage(format!("error: {e}\n")),
    };
    let report = RunReport {
        command,
        params,
        payload: out.payload,
        pass: out.pass,
        duration_ms: cli.timing.then_some(elapsed.as_secs_f64() * 1e3),
    };
    let code = exit_code(out.pass);
    RunOutput {
        stdout: render(format, &report, &out.headers, &out.rows),
        stderr: String::new(),
        code,
    }
}
