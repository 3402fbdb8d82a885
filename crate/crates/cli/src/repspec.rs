//! Parsing of `--rep` specifications.

use std::sync::Arc;

use zfr_core::fields::NumberField;
use zfr_core::reps::{aptable, DirichletCharacter, Rep};

use crate::CliError;

fn bad(spec: &str, why: &str) -> CliError {
    CliError::Config(format!(
        "cannot parse representation `{spec}`: {why} (expected trivial, trivial:D, dirichlet:Q:INDEX, delta, newform:PATH or formal:LABEL:RANK:sd|nsd)"
    ))
}

fn num<T: std::str::FromStr>(spec: &str, s: &str, what: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| bad(spec, &format!("{what} `{s}` is not an integer")))
}

/// `cutoff` is the eigenvalue range generated for `delta`.
pub fn parse(spec: &str, cutoff: u64) -> Result<Rep, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["trivial"] => Ok(Rep::trivial(NumberField::rationals())),
        ["trivial", d] => Ok(Rep::trivial(NumberField::quadratic(num(spec, d, "discriminant")?)?)),
        ["dirichlet", q, i] => Ok(Rep::character(DirichletCharacter::new(
            num(spec, q, "modulus")?,
            num(spec, i, "index")?,
        )?)),
        ["delta"] => Ok(Rep::delta(cutoff)),
        ["newform", path @ ..] if !path.is_empty() => {
            let path = path.join(":");
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Io(format!("cannot read eigenvalue table {path}: {e}")))?;
            Ok(Rep::newform(Arc::new(aptable::parse(&text)?)))
        }
        ["formal", label, rank, flag] => {
            let self_dual = match *flag {
                "sd" => true,
                "nsd" => false,
                _ => return Err(bad(spec, "self-duality flag must be sd or nsd")),
            };
            Ok(Rep::formal(*label, num(spec, rank, "rank")?, self_dual)?)
        }
        _ => Err(bad(spec, "unknown form")),
    }
}
