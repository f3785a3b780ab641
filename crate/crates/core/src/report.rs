//! The serialized form of a homomesy report.
//!
//! Rationals are strings in lowest terms (`"p/q"`, or an integer when the
//! denominator is one); states are rendered by the caller.

use serde::{Deserialize, Serialize};

use crate::engine::HomomesyReport;
use crate::error::Result;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub rep: String,
    pub period: usize,
    pub average: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub map: String,
    pub space: String,
    pub statistic: String,
    pub orbits: Vec<OrbitEntry>,
    pub global_average: Option<Vec<String>>,
    pub homomesic: bool,
    pub c: Option<Vec<String>>,
}

impl ReportDocument {
    pub fn from_report<S>(
        report: &HomomesyReport<S>,
        map: impl Into<String>,
        space: impl Into<String>,
        render: impl Fn(&S) -> String,
    ) -> Self {
        ReportDocument {
            map: map.into(),
            space: space.into(),
            statistic: report.statistic.clone(),
            orbits: report
                .orbits
                .iter()
                .map(|o| OrbitEntry {
                    rep: render(&o.representative),
                    period: o.period,
                    average: rational::format_vec(&o.average),
                })
                .collect(),
            global_average: report.global_average.as_deref().map(rational::format_vec),
            homomesic: report.homomesic,
            c: report.c.as_deref().map(rational::format_vec),
        }
    }

    /// Re-derives the verdict and constant from the orbit averages alone.
    pub fn recompute_verdict(&self) -> Result<(bool, Option<Vec<Rational>>)> {
        let averages = self
            .orbits
            .iter()
            .map(|o| o.average.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let homomesic = averages.windows(2).all(|w| w[0] == w[1]);
        let c = if homomesic { averages.into_iter().next() } else { None };
        Ok((homomesic, c))
    }

    pub fn parsed_c(&self) -> Result<Option<Vec<Rational>>> {
        self.c
            .as_ref()
            .map(|c| c.iter().map(|s| rational::parse(s)).collect())
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::check_homomesy;
    use crate::engine::Statistic;
    use crate::rational::ratio;

    #[test]
    fn document_shape_and_round_trip() {
        let space: Vec<u8> = (0..6).collect();
        // orbits {0,1,2} and {3,4,5}; statistic averages 1 and 4
        let rot = |x: &u8| if *x < 3 { (x + 1) % 3 } else { 3 + (x - 2) % 3 };
        let f = Statistic::counting("id", |x: &u8| *x as i64);
        let report = check_homomesy(rot, &space, &f).unwrap();
        let doc = ReportDocument::from_report(&report, "rot", "0..6", |x| x.to_string());
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(json["orbits"][1]["average"][0], "4");
        assert_eq!(json["global_average"][0], "5/2");
        assert_eq!(json["c"], serde_json::Value::Null);
        let back: ReportDocument = serde_json::from_value(json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.recompute_verdict().unwrap(), (false, None));

        let g = Statistic::scalar("half", |x: &u8| if *x % 3 == 0 { ratio(3, 2) } else { ratio(0, 1) });
        let doc = ReportDocument::from_report(&check_homomesy(rot, &space, &g).unwrap(), "rot", "0..6", |x| x.to_string());
        assert_eq!(doc.c, Some(vec!["1/2".to_string()]));
        assert_eq!(doc.recompute_verdict().unwrap(), (true, Some(vec![ratio(1, 2)])));
    }
}
