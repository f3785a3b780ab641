//! Per-system parameter validation, statistic selection and state
//! (de)serialization.

use std::collections::BTreeSet;

use homomesy_core::gallery::chains::{self, Generator};
use homomesy_core::gallery::lyness::{lyness_cycle, lyness_orbit_product, lyness_step, LynessState};
use homomesy_core::gallery::sandpile::{SandpileConfig, SandpileGraph};
use homomesy_core::gallery::ssyt::{self, RectSSYT};
use homomesy_core::gallery::suter::{self, Partition};
use homomesy_core::gallery::words::{self as word_gallery, Permutation};
use homomesy_core::rational::{self, int};
use homomesy_core::report::OrbitEntry;
use homomesy_core::{Antichain, GridPoset, OrderIdeal, Rational, ReportDocument, Sign, SignWord, Statistic, System};

use crate::output::{self, ListedOrbit, OrbitListing};
use crate::run::{execute, expectation, Experiment, IndicatorBasis};
use crate::{CliError, Mode, Options, Outcome, SystemKind};

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn require<T: Copy>(value: Option<T>, flag: &str, kind: SystemKind) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{} needs {flag}", system_name(kind))))
}

fn system_name(kind: SystemKind) -> String {
    use clap::ValueEnum;
    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

/// Rejects parameters the chosen system does not read.
fn allow_only(o: &Options, allowed: &[&str]) -> Result<(), CliError> {
    let given = [
        ("--a", o.a.is_some()),
        ("--b", o.b.is_some()),
        ("--n", o.n.is_some()),
        ("--k", o.k.is_some()),
        ("--m", o.m.is_some()),
        ("--graph", o.graph.is_some()),
        ("--cells", o.cells.is_some()),
    ];
    for (flag, set) in given {
        if set && !allowed.contains(&flag) {
            return usage(format!("{} does not take {flag}", system_name(o.system)));
        }
    }
    Ok(())
}

/// Splits `name:argument`.
fn selector<'a>(o: &'a Options, default: &'a str) -> (&'a str, Option<&'a str>) {
    let text = o.stat.as_deref().unwrap_or(default);
    match text.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (text, None),
    }
}

fn unknown_stat<T>(o: &Options, choices: &str) -> Result<T, CliError> {
    usage(format!(
        "unknown statistic {:?} for {}; choose from {choices}",
        o.stat.as_deref().unwrap_or(""),
        system_name(o.system)
    ))
}

fn parse_number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T, CliError> {
    text.trim().parse().map_err(|_| CliError::Usage(format!("{what}: cannot parse {text:?}")))
}

/// All unsigned integers in `text`, ignoring brackets and separators.
fn integers(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| !c.is_ascii_digit() && c != '-')
        .filter(|t| !t.is_empty())
        .map(|t| parse_number(t, "integer list"))
        .collect()
}

fn pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let nums = integers(text)?;
    if nums.len() % 2 != 0 {
        return usage(format!("{text:?} does not list (k,l) pairs"));
    }
    Ok(nums.chunks(2).map(|c| (c[0], c[1])).collect())
}

pub fn dispatch(mode: Mode, o: &Options) -> Result<Outcome, CliError> {
    if o.expect_c.is_some() && mode != Mode::Check {
        return usage("--expect-c only applies to check");
    }
    if o.seed.is_some() && mode != Mode::Orbits && o.system != SystemKind::Lyness {
        return usage("--seed only applies to orbits (and to lyness, which needs it)");
    }
    match o.system {
        SystemKind::GridRowmotionIdeals | SystemKind::GridPromotionIdeals => execute(mode, grid_ideals(o)?, o),
        SystemKind::GridRowmotionAntichains | SystemKind::GridPromotionAntichains => {
            execute(mode, grid_antichains(o)?, o)
        }
        SystemKind::Ballot | SystemKind::CyclicInversions => execute(mode, words(o)?, o),
        SystemKind::ReversalInversions => execute(mode, reversal(o)?, o),
        SystemKind::Sandpile => execute(mode, sandpile(o)?, o),
        SystemKind::Suter => execute(mode, suter(o)?, o),
        SystemKind::Ssyt => execute(mode, ssyt(o)?, o),
        SystemKind::Lyness => lyness(mode, o),
    }
}

fn grid(o: &Options) -> Result<GridPoset, CliError> {
    allow_only(o, &["--a", "--b"])?;
    let a = require(o.a, "--a", o.system)?;
    let b = require(o.b, "--b", o.system)?;
    Ok(GridPoset::new(a, b)?)
}

fn element(p: &GridPoset, arg: Option<&str>) -> Result<usize, CliError> {
    match pairs(arg.unwrap_or(""))?.as_slice() {
        [(k, l)] => Ok(p.index(*k, *l)?),
        _ => usage("indicator needs one element, as indicator:k,l"),
    }
}

fn coordinates(p: &GridPoset) -> Vec<String> {
    (0..p.size()).map(|x| format!("{:?}", p.coords(x)).replace(' ', "")).collect()
}

fn family(name: &'static str, gens: Vec<Generator>) -> impl Iterator<Item = (&'static str, Generator)> {
    gens.into_iter().map(move |g| (name, g))
}

fn grid_ideals(o: &Options) -> Result<Experiment<OrderIdeal>, CliError> {
    let p = grid(o)?;
    let system = if o.system == SystemKind::GridRowmotionIdeals {
        chains::rowmotion_ideals(&p, o.guard)?
    } else {
        chains::promotion_ideals(&p, o.guard)?
    };
    let statistic = match selector(o, "ideal-size") {
        ("ideal-size", None) => chains::ideal_size(),
        ("file", Some(d)) => {
            let d: i64 = parse_number(d, "file offset")?;
            if !p.files().contains(&d) {
                return usage(format!("file offset {d} outside {:?}", p.files()));
            }
            chains::ideal_file_count(&p, d)
        }
        ("indicator", arg) => chains::ideal_indicator(&p, element(&p, arg)?),
        _ => return unknown_stat(o, "ideal-size, file:D, indicator:K,L"),
    };
    // a seed lists generators; its down-closure is the ideal
    let seed = match &o.seed {
        Some(text) => Some(p.down_closure(&p.set_from_pairs(&pairs(text)?)?)),
        None => None,
    };
    let basis = IndicatorBasis {
        coordinates: coordinates(&p),
        statistics: chains::ideal_indicator_basis(&p),
        generators: family("file-sum", chains::file_sum_generators(&p))
            .chain(family("opposite-sum", chains::opposite_sum_generators(&p)))
            .collect(),
    };
    let space = format!("J([{}]x[{}])", p.a(), p.b());
    let (render_p, word_p) = (p.clone(), p.clone());
    Ok(Experiment {
        system,
        space,
        statistic,
        render: Box::new(move |i: &OrderIdeal| render_p.format_set(&i.0)),
        word: Some(Box::new(move |i: &OrderIdeal| word_p.sign_word(i).to_string())),
        seed,
        basis: Some(basis),
    })
}

fn grid_antichains(o: &Options) -> Result<Experiment<Antichain>, CliError> {
    let p = grid(o)?;
    let system = if o.system == SystemKind::GridRowmotionAntichains {
        chains::rowmotion_antichains(&p, o.guard)?
    } else {
        chains::promotion_antichains(&p, o.guard)?
    };
    let fiber = |arg: Option<&str>, max: usize| -> Result<usize, CliError> {
        let i: usize = parse_number(arg.unwrap_or(""), "fiber index")?;
        if (1..=max).contains(&i) {
            Ok(i)
        } else {
            usage(format!("fiber index {i} outside 1..={max}"))
        }
    };
    let statistic = match selector(o, "antichain-size") {
        ("antichain-size", None) => chains::antichain_size(),
        ("positive-fiber", arg) => chains::antichain_positive_fiber_count(&p, fiber(arg, p.a())?),
        ("negative-fiber", arg) => chains::antichain_negative_fiber_count(&p, fiber(arg, p.b())?),
        ("indicator", arg) => chains::antichain_indicator(&p, element(&p, arg)?),
        _ => return unknown_stat(o, "antichain-size, positive-fiber:K, negative-fiber:L, indicator:K,L"),
    };
    let seed = match &o.seed {
        Some(text) => Some(p.antichain(p.set_from_pairs(&pairs(text)?)?)?),
        None => None,
    };
    let basis = IndicatorBasis {
        coordinates: coordinates(&p),
        statistics: chains::antichain_indicator_basis(&p),
        generators: family("fiber-sum", chains::fiber_sum_generators(&p))
            .chain(family("opposite-difference", chains::opposite_difference_generators(&p)))
            .collect(),
    };
    let space = format!("A([{}]x[{}])", p.a(), p.b());
    let (render_p, word_p) = (p.clone(), p.clone());
    Ok(Experiment {
        system,
        space,
        statistic,
        render: Box::new(move |x: &Antichain| render_p.format_set(&x.0)),
        word: Some(Box::new(move |x: &Antichain| word_p.stanley_thomas_word(x).to_string())),
        seed,
        basis: Some(basis),
    })
}

fn words(o: &Options) -> Result<Experiment<SignWord>, CliError> {
    allow_only(o, &["--a", "--b"])?;
    let a = require(o.a, "--a", o.system)?;
    let b = require(o.b, "--b", o.system)?;
    if a + b == 0 {
        return usage("words need a + b >= 1");
    }
    let (system, _) = word_gallery::cyclic_inversions_space(a, b, o.guard)?;
    let default = if o.system == SystemKind::Ballot { "ballot" } else { "inversions" };
    let statistic = match selector(o, default) {
        ("ballot", None) => Statistic::counting("ballot", word_gallery::ballot_indicator),
        ("inversions", None) => Statistic::counting("inversions", |w: &SignWord| word_gallery::inversions(w.letters())),
        ("minus-positions", None) => Statistic::counting("minus-positions", word_gallery::minus_position_statistic),
        ("letter", Some(i)) => {
            let i: usize = parse_number(i, "letter position")?;
            if !(1..=a + b).contains(&i) {
                return usage(format!("letter position {i} outside 1..={}", a + b));
            }
            Statistic::counting(format!("letter:{i}"), move |w: &SignWord| w.letters()[i - 1].value())
        }
        _ => return unknown_stat(o, "ballot, inversions, minus-positions, letter:I"),
    };
    let seed = match &o.seed {
        Some(text) => Some(text.parse::<SignWord>()?),
        None => None,
    };
    let n = a + b;
    let basis = IndicatorBasis {
        coordinates: (1..=n).map(|i| format!("s{i}=+")).collect(),
        statistics: (0..n)
            .map(|i| Statistic::counting(format!("s{}=+", i + 1), move |w: &SignWord| (w.letters()[i] == Sign::Plus) as i64))
            .collect(),
        generators: Vec::new(),
    };
    Ok(Experiment {
        system,
        space: format!("words with {a} minus and {b} plus letters"),
        statistic,
        render: Box::new(|w: &SignWord| w.to_string()),
        word: None,
        seed,
        basis: Some(basis),
    })
}

fn reversal(o: &Options) -> Result<Experiment<Permutation>, CliError> {
    allow_only(o, &["--n"])?;
    let n = require(o.n, "--n", o.system)?;
    let (system, statistic) = word_gallery::reversal_inversions_space(n, o.guard)?;
    match selector(o, "inversions") {
        ("inversions", None) => {}
        _ => return unknown_stat(o, "inversions"),
    }
    let seed = o.seed.as_deref().map(integers).transpose()?;
    Ok(Experiment {
        system,
        space: format!("S_{n}"),
        statistic,
        render: Box::new(|p: &Permutation| format!("{p:?}").replace(' ', "")),
        word: None,
        seed,
        basis: None,
    })
}

fn sandpile(o: &Options) -> Result<Experiment<SandpileConfig>, CliError> {
    allow_only(o, &["--graph"])?;
    let Some(path) = &o.graph else { return usage("sandpile needs --graph FILE") };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let g = SandpileGraph::parse(&text)?;
    let system = g.system(o.guard)?;
    let statistic = match selector(o, "firing") {
        ("firing", None) => g.firing_statistic(),
        ("grains", None) => Statistic::new("grains", g.dimension(), |c: &SandpileConfig| {
            c.iter().map(|&x| int(x as i64)).collect()
        }),
        _ => return unknown_stat(o, "firing, grains"),
    };
    let seed = match &o.seed {
        Some(text) => Some(integers(text)?.into_iter().map(|x| x as u64).collect()),
        None => None,
    };
    let basis = IndicatorBasis {
        coordinates: g.nonsink_names().iter().map(|v| format!("grains@{v}")).collect(),
        statistics: (0..g.dimension())
            .map(|i| Statistic::counting(format!("grains@{i}"), move |c: &SandpileConfig| c[i] as i64))
            .collect(),
        generators: Vec::new(),
    };
    Ok(Experiment {
        system,
        space: format!("recurrents of {} over vertices {}", path.display(), g.nonsink_names().join(",")),
        statistic,
        render: Box::new(|c: &SandpileConfig| format!("{c:?}").replace(' ', "")),
        word: None,
        seed,
        basis: Some(basis),
    })
}

fn suter(o: &Options) -> Result<Experiment<Partition>, CliError> {
    allow_only(o, &["--n"])?;
    let n = require(o.n, "--n", o.system)?;
    if n == 0 {
        return usage("suter needs --n >= 1");
    }
    let system = suter::suter_system(n, o.guard)?;
    let statistic = match selector(o, "weight") {
        ("weight", None) => suter::weight_statistic(n),
        ("weight", Some(arg)) => {
            let (i, j) = match integers(arg)?.as_slice() {
                [i] => (*i, n.saturating_sub(*i)),
                [i, j] => (*i, *j),
                _ => return usage("refined weight is weight:I or weight:I,J"),
            };
            if i == 0 || j == 0 || i + j != n {
                return usage(format!("refined weight needs positive i + j = {n}"));
            }
            suter::refined_weight_statistic(n, i, j)
        }
        _ => return unknown_stat(o, "weight, weight:I,J"),
    };
    let seed = o.seed.as_deref().map(str::parse::<Partition>).transpose()?;
    Ok(Experiment {
        system,
        space: format!("Y_{n}"),
        statistic,
        render: Box::new(|l: &Partition| l.to_string()),
        word: None,
        seed,
        basis: None,
    })
}

fn ssyt(o: &Options) -> Result<Experiment<RectSSYT>, CliError> {
    allow_only(o, &["--m", "--n", "--k", "--cells"])?;
    let m = require(o.m, "--m (rows)", o.system)?;
    let n = require(o.n, "--n (columns)", o.system)?;
    let k = require(o.k, "--k (ceiling)", o.system)?;
    let system = ssyt::ssyt_system(m, n, k, o.guard)?;
    let cells = match &o.cells {
        Some(text) => ssyt::parse_cells(text)?,
        None => vec![(1, 1), (m, n)],
    };
    if let Some(bad) = cells.iter().find(|(r, c)| !(1..=m).contains(r) || !(1..=n).contains(c)) {
        return usage(format!("cell {bad:?} outside the {m}x{n} rectangle"));
    }
    let statistic = match selector(o, "sigma") {
        ("sigma", None) => ssyt::sigma_statistic(cells),
        _ => return unknown_stat(o, "sigma (with --cells)"),
    };
    let seed = match &o.seed {
        Some(text) => {
            let rows = text
                .trim()
                .trim_matches(['(', ')'])
                .split('/')
                .map(|row| integers(row).map(|r| r.into_iter().map(|x| x as u32).collect()))
                .collect::<Result<Vec<Vec<u32>>, _>>()?;
            Some(RectSSYT::new(rows, k)?)
        }
        None => None,
    };
    let all_cells: Vec<(usize, usize)> = (1..=m).flat_map(|r| (1..=n).map(move |c| (r, c))).collect();
    let index_of = |cell: (usize, usize)| (cell.0 - 1) * n + (cell.1 - 1);
    let generators = all_cells
        .iter()
        .filter(|&&(r, c)| (r, c) <= (m + 1 - r, n + 1 - c))
        .map(|&(r, c)| {
            let mut coefficients = vec![int(0); m * n];
            coefficients[index_of((r, c))] += int(1);
            coefficients[index_of((m + 1 - r, n + 1 - c))] += int(1);
            let name = format!("T({r},{c}) + T({},{})", m + 1 - r, n + 1 - c);
            ("opposite-sum", Generator { name, coefficients })
        })
        .collect();
    let basis = IndicatorBasis {
        coordinates: all_cells.iter().map(|(r, c)| format!("T({r},{c})")).collect(),
        statistics: all_cells.iter().map(|&cell| ssyt::sigma_statistic(vec![cell])).collect(),
        generators,
    };
    Ok(Experiment {
        system,
        space: format!("SSYT_{k}({n}^{m})"),
        statistic,
        render: Box::new(|t: &RectSSYT| t.to_string()),
        word: None,
        seed,
        basis: Some(basis),
    })
}

fn lyness_seeds(o: &Options) -> Result<Vec<LynessState>, CliError> {
    let Some(text) = &o.seed else {
        return usage("lyness needs --seed x,y (several seeds separated by ';')");
    };
    text.split(';')
        .map(|pair| match pair.trim().trim_matches(['(', ')']).split(',').collect::<Vec<_>>().as_slice() {
            [x, y] => {
                let x = rational::parse(x.trim())?;
                let y = rational::parse(y.trim())?;
                Ok(LynessState::new(x, y)?)
            }
            _ => usage(format!("lyness seed {pair:?} is not x,y")),
        })
        .collect()
}

/// The Lyness space is infinite, so it is cut down to the orbits of the
/// seeds. `log-h` has irrational values; its orbit average is reported as 0
/// exactly when the product of `|h|` over the orbit is 1.
fn lyness(mode: Mode, o: &Options) -> Result<Outcome, CliError> {
    allow_only(o, &[])?;
    let seeds = lyness_seeds(o)?;
    let space: BTreeSet<LynessState> = seeds
        .iter()
        .flat_map(|s| std::iter::successors(Some(s.clone()), |t| Some(lyness_step(t))).take(5))
        .collect();
    let system = System::new("lyness", space.into_iter().collect(), lyness_step);
    let space_label = "orbits of the seeds".to_string();
    match selector(o, "log-h") {
        ("x", None) => {
            let exp = Experiment {
                system,
                space: space_label,
                statistic: Statistic::scalar("x", |s: &LynessState| s.x().clone()),
                render: Box::new(|s: &LynessState| s.to_string()),
                word: None,
                seed: None,
                basis: None,
            };
            execute(mode, exp, o)
        }
        ("log-h", None) => {
            let part = system.partition(o.guard)?;
            let mut entries = Vec::new();
            for orbit in part.orbits() {
                let product = lyness_orbit_product(orbit.representative());
                if product != int(1) {
                    return usage(format!(
                        "product of |h| over the orbit of {} is {}",
                        orbit.representative(),
                        rational::format(&product)
                    ));
                }
                let values: Vec<String> = lyness_cycle(orbit.representative()).iter().map(rational::format).collect();
                entries.push((orbit, values));
            }
            let zero = vec!["0".to_string()];
            let statistic = "log|h(x)|".to_string();
            match mode {
                Mode::Check => {
                    let doc = ReportDocument {
                        map: "lyness".into(),
                        space: space_label,
                        statistic,
                        orbits: entries
                            .iter()
                            .map(|(orbit, _)| OrbitEntry {
                                rep: orbit.representative().to_string(),
                                period: orbit.period(),
                                average: zero.clone(),
                            })
                            .collect(),
                        global_average: Some(zero.clone()),
                        homomesic: true,
                        c: Some(zero),
                    };
                    let c: Vec<Rational> = vec![int(0)];
                    let mismatch = expectation(o, true, Some(&c))?;
                    Ok(Outcome { text: output::report(&doc, o.format)?, mismatch })
                }
                Mode::Orbits => {
                    let doc = OrbitListing {
                        map: "lyness".into(),
                        space: space_label,
                        statistic,
                        orbits: entries
                            .iter()
                            .map(|(orbit, values)| ListedOrbit {
                                rep: orbit.representative().to_string(),
                                period: orbit.period(),
                                average: zero.clone(),
                                states: orbit.states().iter().map(|s| s.to_string()).collect(),
                                words: Some(values.clone()),
                            })
                            .collect(),
                    };
                    Ok(Outcome { text: output::orbits(&doc, o.format)?, mismatch: None })
                }
                Mode::Subspace => usage("no indicator basis is defined for lyness"),
            }
        }
        _ => unknown_stat(o, "log-h, x"),
    }
}
