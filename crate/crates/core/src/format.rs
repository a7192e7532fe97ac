//! Canonical JSON documents for instances and solutions, and the CSV claims
//! report. Documents are written with sorted keys, no insignificant
//! whitespace and a trailing newline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::ClaimRow;
use crate::model::{Cost, DistanceMatrix, Instance, Solution, StackingOrder, Tour};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    n: usize,
    k: usize,
    d1: Vec<Vec<Cost>>,
    d2: Vec<Vec<Cost>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionDoc {
    t1: Vec<usize>,
    t2: Vec<usize>,
    stacks: Vec<Vec<usize>>,
    value: Cost,
}

fn canonical<T: Serialize>(doc: &T) -> String {
    // serde_json::Value keeps object keys sorted
    let value = serde_json::to_value(doc).expect("documents are plain data");
    let mut out = value.to_string();
    out.push('\n');
    out
}

pub fn instance_to_json(inst: &Instance) -> String {
    canonical(&InstanceDoc {
        n: inst.n(),
        k: inst.k(),
        d1: inst.d1().rows(),
        d2: inst.d2().rows(),
    })
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("instance: {e}")))?;
    Instance::new(
        doc.n,
        doc.k,
        DistanceMatrix::from_rows(doc.d1)?,
        DistanceMatrix::from_rows(doc.d2)?,
    )
}

pub fn solution_to_json(sol: &Solution) -> String {
    canonical(&SolutionDoc {
        t1: sol.t1.seq().to_vec(),
        t2: sol.t2.seq().to_vec(),
        stacks: sol.stacking.stacks().to_vec(),
        value: sol.value,
    })
}

/// Parses a solution document without checking it against any instance; the
/// stated value is kept as written.
pub fn solution_from_json(text: &str) -> Result<Solution> {
    let doc: SolutionDoc =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("solution: {e}")))?;
    Ok(Solution {
        t1: Tour::new(doc.t1)?,
        t2: Tour::new(doc.t2)?,
        stacking: StackingOrder::new(doc.stacks)?,
        value: doc.value,
    })
}

/// Stacking order document: a bare JSON array of stacks, bottom to top.
pub fn stacking_from_json(text: &str) -> Result<StackingOrder> {
    let stacks: Vec<Vec<usize>> =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("stacks: {e}")))?;
    StackingOrder::new(stacks)
}

pub const CLAIMS_CSV_HEADER: &str = "family,n,claim_id,paper_value,computed_value,status";

fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn claims_to_csv(rows: &[ClaimRow]) -> String {
    let mut out = String::from(CLAIMS_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let fields = [
            row.family.to_string(),
            row.n.to_string(),
            row.claim_id.clone(),
            row.paper_value.clone(),
            row.computed_value.clone(),
            row.status.to_string(),
        ];
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{"d1":[[0,1,2],[3,0,4],[5,6,0]],"d2":[[0,7,8],[9,0,1],[2,3,0]],"k":2,"n":2}
"#;

    #[test]
    fn instance_round_trip_is_byte_stable() {
        let inst = instance_from_json(SMALL).unwrap();
        assert_eq!(inst.d1().get(1, 2), 4);
        assert_eq!(instance_to_json(&inst), SMALL);
    }

    #[test]
    fn key_order_and_whitespace_are_normalized() {
        let messy = r#"{ "n": 2, "k": 2,
            "d2": [[0,7,8],[9,0,1],[2,3,0]], "d1": [[0,1,2],[3,0,4],[5,6,0]] }"#;
        assert_eq!(instance_to_json(&instance_from_json(messy).unwrap()), SMALL);
    }

    #[test]
    fn malformed_instances_are_rejected() {
        assert!(instance_from_json("{").is_err());
        assert!(
            instance_from_json(r#"{"n":2,"k":1,"d1":[[0,1],[1,0]],"d2":[[0,1],[1,0]]}"#).is_err()
        );
        assert!(
            instance_from_json(r#"{"n":1,"k":1,"d1":[[0,-1],[1,0]],"d2":[[0,1],[1,0]]}"#).is_err()
        );
        assert!(
            instance_from_json(r#"{"n":1,"k":1,"d1":[[0,1],[1,0]],"d2":[[0,1],[1,0]],"x":1}"#)
                .is_err()
        );
    }

    #[test]
    fn solution_round_trip() {
        let text = "{\"stacks\":[[1,3],[2]],\"t1\":[1,2,3],\"t2\":[2,3,1],\"value\":12}\n";
        let sol = solution_from_json(text).unwrap();
        assert_eq!(sol.stacking.stacks(), &[vec![1, 3], vec![2]]);
        assert_eq!(solution_to_json(&sol), text);
        assert!(solution_from_json(r#"{"stacks":[[1]],"t1":[1,1],"t2":[1],"value":0}"#).is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("{44,45,50}"), "\"{44,45,50}\"");
        assert_eq!(csv_field("7000"), "7000");
    }
}
