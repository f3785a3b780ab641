//! The three commands, written once over any state type.

use homomesy_core::engine::report_for_orbits;
use homomesy_core::gallery::chains::Generator;
use homomesy_core::{rational, Orbit, Rational, ReportDocument, Statistic, System};

use crate::output::{self, GeneratorEntry, OrbitListing, ListedOrbit, SubspaceDocument};
use crate::{CliError, Mode, Options, Outcome};

pub type Render<S> = Box<dyn Fn(&S) -> String>;

/// Indicator statistics with the coefficient vectors whose membership in
/// the homomesic subspace gets reported.
pub struct IndicatorBasis<S> {
    pub coordinates: Vec<String>,
    pub statistics: Vec<Statistic<S>>,
    pub generators: Vec<(&'static str, Generator)>,
}

pub struct Experiment<S> {
    pub system: System<S>,
    pub space: String,
    pub statistic: Statistic<S>,
    pub render: Render<S>,
    /// Optional second rendering shown beside each state (a word encoding).
    pub word: Option<Render<S>>,
    pub seed: Option<S>,
    pub basis: Option<IndicatorBasis<S>>,
}

pub fn execute<S: Clone + Ord>(mode: Mode, exp: Experiment<S>, opts: &Options) -> Result<Outcome, CliError> {
    match mode {
        Mode::Check => check(exp, opts),
        Mode::Orbits => orbits(exp, opts),
        Mode::Subspace => subspace(exp, opts),
    }
}

fn check<S: Clone + Ord>(exp: Experiment<S>, opts: &Options) -> Result<Outcome, CliError> {
    let report = exp.system.partition(opts.guard)?.check(&exp.statistic)?;
    let doc = ReportDocument::from_report(&report, exp.system.name.as_str(), exp.space.as_str(), |s| (exp.render)(s));
    let mismatch = expectation(opts, report.homomesic, report.c.as_deref())?;
    Ok(Outcome { text: output::report(&doc, opts.format)?, mismatch })
}

/// `None` when `--expect-c` is absent or matches.
pub fn expectation(opts: &Options, homomesic: bool, c: Option<&[Rational]>) -> Result<Option<String>, CliError> {
    let Some(text) = &opts.expect_c else { return Ok(None) };
    let expected = text
        .split(',')
        .map(|s| rational::parse(s.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--expect-c: {e}")))?;
    Ok(match c {
        Some(c) if homomesic && c == expected.as_slice() => None,
        Some(c) => Some(format!("expected c = {}, found c = {}", text, rational::format_vec(c).join(","))),
        None => Some(format!("expected c = {text}, but the statistic is not homomesic")),
    })
}

fn orbits<S: Clone + Ord>(exp: Experiment<S>, opts: &Options) -> Result<Outcome, CliError> {
    let orbits: Vec<Orbit<S>> = match &exp.seed {
        Some(seed) => {
            if !exp.system.space.contains(seed) {
                return Err(CliError::Usage(format!("seed {} is not a state of {}", (exp.render)(seed), exp.space)));
            }
            vec![exp.system.orbit_of(seed, opts.guard)?]
        }
        None => exp.system.partition(opts.guard)?.orbits().to_vec(),
    };
    let report = report_for_orbits(&orbits, &exp.statistic)?;
    let listed = orbits
        .iter()
        .zip(&report.orbits)
        .map(|(orbit, summary)| {
            // start the listing at the seed when there is one
            let states = orbit.states();
            let start = exp.seed.as_ref().and_then(|s| states.iter().position(|x| x == s)).unwrap_or(0);
            let ordered: Vec<&S> = states[start..].iter().chain(&states[..start]).collect();
            ListedOrbit {
                rep: (exp.render)(orbit.representative()),
                period: orbit.period(),
                average: rational::format_vec(&summary.average),
                states: ordered.iter().map(|s| (exp.render)(s)).collect(),
                words: exp.word.as_ref().map(|w| ordered.iter().map(|s| w(s)).collect()),
            }
        })
        .collect();
    let doc = OrbitListing {
        map: exp.system.name.clone(),
        space: exp.space.clone(),
        statistic: exp.statistic.name().to_string(),
        orbits: listed,
    };
    Ok(Outcome { text: output::orbits(&doc, opts.format)?, mismatch: None })
}

fn subspace<S: Clone + Ord>(exp: Experiment<S>, opts: &Options) -> Result<Outcome, CliError> {
    let Some(basis) = exp.basis else {
        return Err(CliError::Usage(format!("no indicator basis is defined for {}", exp.space)));
    };
    let sub = exp.system.partition(opts.guard)?.homomesic_subspace(&basis.statistics)?;
    let generators = basis
        .generators
        .iter()
        .map(|(family, g)| GeneratorEntry {
            family: family.to_string(),
            name: g.name.clone(),
            coefficients: rational::format_vec(&g.coefficients),
            present: sub.contains(&g.coefficients),
        })
        .collect();
    let doc = SubspaceDocument {
        map: exp.system.name.clone(),
        space: exp.space.clone(),
        coordinates: basis.coordinates,
        dimension: sub.dimension(),
        basis: sub.basis.iter().map(|v| rational::format_vec(v)).collect(),
        generators,
    };
    Ok(Outcome { text: output::subspace(&doc, opts.format)?, mismatch: None })
}
