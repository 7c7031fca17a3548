//! JSON formats for interpretations and quasimodels.

use std::collections::BTreeMap;

use alcbc_core::typesys::ModelCandidate;
use alcbc_core::Interpretation;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] alcbc_core::Error),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InterpretationFile {
    domain: Vec<String>,
    concepts: BTreeMap<String, Vec<String>>,
    roles: BTreeMap<String, Vec<(String, String)>>,
    individuals: BTreeMap<String, String>,
}

pub fn parse_interpretation(text: &str) -> Result<Interpretation, FormatError> {
    let file: InterpretationFile = serde_json::from_str(text).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let mut b = Interpretation::builder(file.domain);
    for (name, members) in file.concepts {
        b = b.concept(name, members);
    }
    for (name, pairs) in file.roles {
        b = b.role(name, pairs);
    }
    for (name, element) in file.individuals {
        b = b.individual(name, element);
    }
    Ok(b.build()?)
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn interpretation_to_json(i: &Interpretation) -> String {
    let file = InterpretationFile {
        domain: i.domain().to_vec(),
        concepts: i
            .concept_names()
            .map(|c| {
                (
                    c.to_string(),
                    i.concept_members(c).into_iter().map(String::from).collect(),
                )
            })
            .collect(),
        roles: i
            .role_names()
            .map(|r| {
                let pairs = i
                    .role_pairs(r)
                    .into_iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect();
                (r.to_string(), pairs)
            })
            .collect(),
        individuals: i
            .individual_names()
            .map(|a| (a.to_string(), i.individual(a).unwrap_or_default().to_string()))
            .collect(),
    };
    serde_json::to_string(&file).expect("plain data serialises")
}

#[derive(Debug, Serialize)]
struct QuasimodelFile {
    types: Vec<Vec<String>>,
    assignment: BTreeMap<String, usize>,
    ftype: Vec<String>,
}

pub fn quasimodel_to_json(mc: &ModelCandidate) -> String {
    let types: Vec<_> = mc.types.iter().collect();
    let file = QuasimodelFile {
        types: types.iter().map(|t| t.printed()).collect(),
        assignment: mc
            .assignment
            .iter()
            .map(|(a, t)| {
                (
                    a.clone(),
                    types.iter().position(|x| *x == t).expect("assigned types are in T"),
                )
            })
            .collect(),
        ftype: mc.ftype.printed(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serialises")
}
