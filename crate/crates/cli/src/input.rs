use resolvent_core::diagram::{Resolvent, TargetDiagram};
use resolvent_core::morphisms::MorphismData;
use resolvent_core::parse::{parse_morphism, parse_scheme, ResolventFile, ResolventSpec, SchemeSpec};
use resolvent_core::{Error, Result};
use serde_json::Value;

/// A loaded input file.
pub enum Input {
    Scheme(TargetDiagram),
    Resolvent(TargetDiagram, Resolvent),
    Morphism(MorphismData),
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Detects the file kind from its top-level keys. A file with `scheme` and
/// `resolvent` keys is a resolvent file; any further keys are ignored so
/// that `resolve` reports can be fed back in.
pub fn load_input(text: &str) -> Result<Input> {
    let value: Value = serde_json::from_str(text).map_err(syntax)?;
    let Some(obj) = value.as_object() else {
        return Err(Error::semantic("$", "expected a JSON object"));
    };
    if obj.contains_key("codomain") || obj.contains_key("domain") {
        return Ok(Input::Morphism(parse_morphism(text)?));
    }
    if obj.contains_key("charts") {
        return Ok(Input::Scheme(parse_scheme(text)?));
    }
    if let (Some(s), Some(r)) = (obj.get("scheme"), obj.get("resolvent")) {
        let file = if obj.len() == 2 {
            ResolventFile::from_json(text)?
        } else {
            let semantic = |what: &str, e: serde_json::Error| Error::semantic(what, e.to_string());
            let scheme: SchemeSpec = serde_json::from_value(s.clone()).map_err(|e| semantic("scheme", e))?;
            let resolvent: ResolventSpec = serde_json::from_value(r.clone()).map_err(|e| semantic("resolvent", e))?;
            ResolventFile { scheme, resolvent }
        };
        let (s, r) = file.load()?;
        return Ok(Input::Resolvent(s, r));
    }
    Err(Error::semantic("$", "not a scheme, resolvent or morphism description"))
}
