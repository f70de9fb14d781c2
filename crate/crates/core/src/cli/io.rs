use std::fs;
use std::io::Write;
use std::path::Path;

use super::{CliError, CliResult};
use crate::moduli::ModulusCurve;
use crate::spaces::Space;
use crate::verify::Pairing;

pub(super) fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub(super) fn read_space(path: &Path) -> CliResult<Space> {
    let text = read_input(path)?;
    Space::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Inline JSON when the argument starts with `{` or `[`, a file path
/// otherwise.
fn inline_or_file(arg: &str) -> CliResult<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_owned())
    } else {
        read_input(Path::new(arg))
    }
}

pub(super) fn read_curve(arg: &str) -> CliResult<ModulusCurve> {
    Ok(ModulusCurve::from_json(&inline_or_file(arg)?)?)
}

pub(super) fn read_pairing(arg: Option<&str>) -> CliResult<Pairing> {
    match arg {
        None => Ok(Pairing::Identity),
        Some(a) => {
            let map: Vec<usize> = serde_json::from_str(&inline_or_file(a)?)
                .map_err(|e| CliError::Input(format!("bad pairing: {e}")))?;
            Ok(Pairing::Map(map))
        }
    }
}

/// Write to `path` atomically (temporary file in the same directory, then
/// rename), or to stdout when no path is given.
pub(super) fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| CliError::Lib(e.into()));
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| CliError::Input(format!("bad output path {}", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(|e| CliError::Lib(e.into()))
}
