//! JSON instance files.
//!
//! ```json
//! { "n": 3, "metric": { "coords2d": [[0, 0], [3, 4], [6, 8]] },
//!   "colors": [1, 2, 1], "k": 1, "req": [2, 1] }
//! ```
//!
//! An explicit metric is given as `{ "matrix": [["0", "1/2"], ["1/2", "0"]] }`
//! with rationals as strings. Solutions serialize directly from
//! [`Solution`](crate::model::Solution).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::model::{Instance, Metric};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricFile {
    Matrix(Vec<Vec<Dist>>),
    Coords2d(Vec<[i64; 2]>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub metric: MetricFile,
    pub colors: Vec<usize>,
    pub k: usize,
    pub req: Vec<usize>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let n = inst.n();
        let metric = match inst.coords() {
            Some(c) => MetricFile::Coords2d(c.to_vec()),
            None => MetricFile::Matrix((0..n).map(|i| (0..n).map(|j| inst.dist(i, j).clone()).collect()).collect()),
        };
        InstanceFile { n, metric, colors: inst.labels(), k: inst.k(), req: inst.req().to_vec() }
    }

    pub fn into_instance(self) -> Result<Instance> {
        let count = match &self.metric {
            MetricFile::Matrix(m) => m.len(),
            MetricFile::Coords2d(c) => c.len(),
        };
        if count != self.n {
            return Err(Error::InvalidInstance(format!("n is {} but the metric has {count} points", self.n)));
        }
        match self.metric {
            MetricFile::Matrix(m) => Instance::new(Metric::from_matrix(m)?, &self.colors, self.k, self.req),
            MetricFile::Coords2d(c) => Instance::from_coords(c, &self.colors, self.k, self.req),
        }
    }
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    serde_json::from_str::<InstanceFile>(text)?.into_instance()
}

pub fn instance_to_json(inst: &Instance) -> Result<String> {
    Ok(serde_json::to_string(&InstanceFile::from_instance(inst))?)
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    instance_from_json(&fs::read_to_string(path)?)
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    fs::write(path, instance_to_json(inst)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::int;
    use crate::gap_lab::sos_gap_instance;

    #[test]
    fn coordinates_round_trip() {
        let text = r#"{"n":3,"metric":{"coords2d":[[0,0],[3,4],[6,8]]},"colors":[1,2,1],"k":1,"req":[2,1]}"#;
        let inst = instance_from_json(text).unwrap();
        assert_eq!(*inst.dist(0, 2), Dist::from_integer(10));
        assert_eq!(instance_to_json(&inst).unwrap(), text);
    }

    #[test]
    fn matrix_round_trip() {
        let inst = sos_gap_instance(1, &int(7)).unwrap();
        let back = instance_from_json(&instance_to_json(&inst).unwrap()).unwrap();
        assert_eq!(back.labels(), inst.labels());
        assert_eq!(*back.dist(0, 4), Dist::from_integer(7));
        let text = r#"{"n":2,"metric":{"matrix":[["0","1/2"],["1/2","0"]]},"colors":[1,1],"k":1,"req":[2]}"#;
        assert_eq!(instance_from_json(text).unwrap().dist(0, 1).to_string(), "1/2");
    }

    #[test]
    fn rejects_bad_files() {
        let wrong_n = r#"{"n":4,"metric":{"coords2d":[[0,0]]},"colors":[1],"k":1,"req":[1]}"#;
        assert!(matches!(instance_from_json(wrong_n), Err(Error::InvalidInstance(_))));
        let asym = r#"{"n":2,"metric":{"matrix":[["0","1"],["2","0"]]},"colors":[1,1],"k":1,"req":[1]}"#;
        assert!(instance_from_json(asym).is_err());
        assert!(matches!(instance_from_json("{"), Err(Error::Json(_))));
    }
}
