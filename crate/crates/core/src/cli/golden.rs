//! Golden-file runner.
//!
//! A case file `<name>.case.json` holds the arguments of one invocation
//! (without the program name), the expected exit status and the expected
//! standard output. The token `$DIR` in an argument is replaced by the
//! directory of the case file.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::run_captured;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenCase {
    pub args: Vec<String>,
    pub exit_code: i32,
    pub stdout: String,
}

fn case_files(dir: &Path) -> std::io::Result<Vec<std::path::PathBuf>> {
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with(".case.json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs one case and returns the actual exit status and output.
pub fn execute(case: &GoldenCase, dir: &Path) -> (i32, String) {
    let dir = dir.to_string_lossy();
    let args = std::iter::once("coulombkit".to_string())
        .chain(case.args.iter().map(|a| a.replace("$DIR", &dir)));
    let (code, out, _) = run_captured(args, "");
    (code, out)
}

pub(super) fn run(dir: &Path, bless: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let files = match case_files(dir) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error (schema-error): {}: {e}", dir.display());
            return 2;
        }
    };
    let mut failed = 0;
    for path in &files {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parsed = std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| serde_json::from_str::<GoldenCase>(&t).map_err(|e| e.to_string()));
        let mut case = match parsed {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(out, "FAIL {name}: {e}");
                failed += 1;
                continue;
            }
        };
        let (code, stdout) = execute(&case, dir);
        if bless {
            case.exit_code = code;
            case.stdout = stdout;
            let text = serde_json::to_string_pretty(&case).expect("case serializes");
            if std::fs::write(path, text + "\n").is_err() {
                failed += 1;
            }
            let _ = writeln!(out, "BLESS {name}");
        } else if code == case.exit_code && stdout == case.stdout {
            let _ = writeln!(out, "PASS {name}");
        } else {
            failed += 1;
            let _ = writeln!(
                out,
                "FAIL {name}: exit {code} (expected {})",
                case.exit_code
            );
        }
    }
    let _ = writeln!(out, "{} cases, {failed} failed", files.len());
    i32::from(failed > 0)
}
