use std::io::Read;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::{CliError, CliResult, Output};
use crate::Cli;

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// NDJSON job file, or `-` for stdin.
    #[arg(default_value = "-")]
    pub file: String,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

struct Job {
    id: Value,
    args: Vec<String>,
}

fn parse_job(line: &str, index: usize) -> Result<Job, String> {
    let v: Value = serde_json::from_str(line).map_err(|e| format!("job JSON: {e}"))?;
    let (id, args) = match v {
        Value::Array(a) => (json!(index), Value::Array(a)),
        Value::Object(mut o) => (
            o.remove("id").unwrap_or(json!(index)),
            o.remove("args").ok_or("job object needs `args`")?,
        ),
        _ => return Err("job must be an argument array or {\"id\", \"args\"}".into()),
    };
    let args: Vec<String> = serde_json::from_value(args).map_err(|e| format!("job args: {e}"))?;
    Ok(Job { id, args })
}

fn run_line(line: &str, index: usize, base: &RunConfig) -> Value {
    let job = match parse_job(line, index) {
        Ok(j) => j,
        Err(m) => {
            let e = CliError::Usage(m);
            return json!({ "id": index, "exit": e.exit_code(), "error": e.to_json()["error"] });
        }
    };
    let argv = std::iter::once("mfxyz".to_string()).chain(job.args);
    let result = Cli::try_parse_from(argv)
        .map_err(|e| CliError::Usage(e.to_string().trim().to_string()))
        .and_then(|cli| crate::run(&cli, Some(base)));
    match result {
        Ok(out) => json!({ "id": job.id, "exit": out.exit_code(), "result": out.json }),
        Err(e) => json!({ "id": job.id, "exit": e.exit_code(), "error": e.to_json()["error"] }),
    }
}

pub fn run(a: &BatchArgs, cfg: &RunConfig) -> CliResult<Output> {
    let mut input = String::new();
    if a.file == "-" {
        std::io::stdin()
            .read_to_string(&mut input)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
    } else {
        input = std::fs::read_to_string(&a.file)
            .map_err(|e| CliError::Usage(format!("{}: {e}", a.file)))?;
    }
    let lines: Vec<&str> = input.lines().filter(|l| !l.trim().is_empty()).collect();
    let results: Vec<Mutex<Option<Value>>> = lines.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..a.jobs.clamp(1, lines.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(line) = lines.get(i) else { break };
                *results[i].lock().expect("unpoisoned") = Some(run_line(line, i, cfg));
            });
        }
    });
    let values: Vec<Value> = results
        .into_iter()
        .map(|m| m.into_inner().expect("unpoisoned").expect("every job ran"))
        .collect();
    let code = values
        .iter()
        .filter_map(|v| v["exit"].as_u64())
        .max()
        .unwrap_or(0) as u8;
    let text: String = values.iter().map(|v| format!("{v}\n")).collect();
    Ok(Output {
        json: Value::Array(values),
        text,
        code,
    })
}
