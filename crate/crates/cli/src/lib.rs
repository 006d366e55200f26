//! Command implementations behind the `level-eulerian` binary. Each command
//! returns a [`Record`] tree; the binary only renders it and picks the exit
//! status.

pub mod report;

use std::fmt;
use std::path::PathBuf;

use level_eulerian::families::{
    closed_form_psi, crosscheck_family, family_matrix, verify_block_lemmas, verify_series_equations, EquationOutcome,
    Family, FamilySpec, PairCheck,
};
use level_eulerian::levelposet::{
    eulerian_certificate, eulerian_rank_check, psi_automaton, psi_truncated, LevelPoset, RankCheck, Verdict,
};
use level_eulerian::matlin::{parse_bin_matrix, BinMatrix, SeriesMatrix};
use level_eulerian::ncalg::{ab_to_cd_graded, Alphabet};
use level_eulerian::walkshell::{
    reduced_power_closed_form, reduced_powers, shellability_certificate, ShellingCertificate,
};
use level_eulerian::Error;

pub use report::Record;

/// Bad user input. The binary maps this to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

pub type CmdResult = Result<Record, InputError>;

/// Where the matrix comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Family(FamilySpec),
    File(PathBuf),
}

impl Source {
    /// `--family/--r` or `--matrix`, exactly one of them.
    pub fn from_flags(family: Option<Family>, r: Option<u32>, matrix: Option<PathBuf>) -> Result<Self, InputError> {
        match (family, r, matrix) {
            (Some(f), Some(r), None) => Ok(Source::Family(FamilySpec::new(f, r)?)),
            (Some(_), None, None) => Err(InputError("--family needs --r".into())),
            (None, Some(_), _) => Err(InputError("--r needs --family".into())),
            (None, None, Some(path)) => Ok(Source::File(path)),
            (Some(_), _, Some(_)) => Err(InputError("give either --family or --matrix, not both".into())),
            (None, None, None) => Err(InputError("give --family M|N --r k or --matrix FILE".into())),
        }
    }

    pub fn family(&self) -> Option<FamilySpec> {
        match self {
            Source::Family(spec) => Some(*spec),
            Source::File(_) => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Source::Family(spec) => spec.to_string(),
            Source::File(path) => path.display().to_string(),
        }
    }

    pub fn load(&self) -> Result<BinMatrix, InputError> {
        let m = match self {
            Source::Family(spec) => family_matrix(*spec),
            Source::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                parse_bin_matrix(&text)?
            }
        };
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            }
            .into());
        }
        Ok(m)
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn rank_record(p: u32, check: &RankCheck) -> Record {
    match check {
        RankCheck::Pass => Record::check(format!("rank {p}"), true),
        RankCheck::Fail { i, j, value } => {
            Record::check(format!("rank {p}"), false).value(format!("entry ({i},{j}) = {value}"))
        }
    }
}

pub fn cmd_analyze(source: &Source, pmax: u32) -> CmdResult {
    if pmax < 2 {
        return Err(InputError(format!("--pmax must be at least 2, got {pmax}")));
    }
    let poset = LevelPoset::new(source.load()?)?;
    let mut root = Record::new(format!("analyze {}", source.label())).child(Record::info("n", poset.n()));
    match poset.exponent() {
        None => root.push(Record::info("primitive", "no")),
        Some(gamma) => {
            root.push(Record::info("primitive", "yes"));
            root.push(Record::info("exponent", gamma));
            let cert = eulerian_certificate(&poset)?;
            let target = cert
                .target_sum
                .as_ref()
                .map_or("none (odd n)".to_string(), |t| t.to_string());
            let mut node = Record::new("certificate")
                .child(Record::info("W row sums", join(&cert.row_sums)))
                .child(Record::info("W column sums", join(&cert.col_sums)))
                .child(Record::info("target line sum", target))
                .child(Record::info(
                    "line sums uniform",
                    if cert.uniform_sums { "yes" } else { "no" },
                ))
                .child(Record::info(
                    "(J - Bin(M^(exponent-1)))^2 = 0",
                    if cert.square_vanishes { "yes" } else { "no" },
                ));
            for (p, check) in &cert.direct {
                node.push(rank_record(*p, check));
            }
            let verdict = match cert.verdict {
                Verdict::Certified => Record::check("verdict", true).value("Eulerian at every even rank"),
                Verdict::FailsAtRank { rank } => Record::check("verdict", false).value(format!("fails at rank {rank}")),
            };
            root.push(node.child(verdict));
        }
    }
    let mut direct = Record::new(format!("direct checks up to rank {pmax}"));
    for p in (2..=pmax).step_by(2) {
        direct.push(rank_record(p, &eulerian_rank_check(&poset, p)?));
    }
    Ok(root.child(direct))
}

pub fn cmd_cd_index(source: &Source, i: usize, j: usize, p: u32, flags: bool) -> CmdResult {
    let poset = LevelPoset::new(source.load()?)?;
    let interval = poset.interval(i, j, p)?;
    let ab = interval.ab_index()?;
    let mut root =
        Record::new(format!("interval [({i},0),({j},{p})] of {}", source.label())).child(Record::info("ab-index", &ab));
    root.push(match ab_to_cd_graded(&ab) {
        Ok(cd) => Record::info("cd-index", cd),
        Err(e @ Error::NotInCdSpan { .. }) => Record::check("cd-index", false).value(e),
        Err(e) => return Err(e.into()),
    });
    if flags {
        let fv = interval.flag_vector();
        let mut node = Record::new("flag f-vector");
        for (ranks, f) in &fv.entries {
            node.push(Record::info(
                format!("{{{}}}", ranks.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
                f,
            ));
        }
        root.push(node);
    }
    Ok(root)
}

/// How `series` computes the matrix of series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    /// Sum of interval ab-indices.
    Intervals,
    /// Path sum `K (b K)^*` with `K` evaluated at `a - b`.
    Automaton,
    /// Family closed form.
    Closed,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Intervals => "intervals",
            Route::Automaton => "automaton",
            Route::Closed => "closed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Basis {
    Ab,
    Cd,
}

pub fn cmd_series(
    source: &Source,
    degree: u32,
    route: Route,
    basis: Basis,
    entry: Option<(usize, usize)>,
) -> CmdResult {
    if route == Route::Closed && source.family().is_none() {
        return Err(InputError("--route closed needs --family".into()));
    }
    let m = source.load()?;
    let n = m.rows();
    if let Some((i, j)) = entry {
        for idx in [i, j] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, dim: n }.into());
            }
        }
    }
    let psi: SeriesMatrix = match route {
        Route::Intervals => psi_truncated(&LevelPoset::new(m)?, degree),
        Route::Automaton => psi_automaton(&LevelPoset::new(m)?, degree),
        Route::Closed => closed_form_psi(source.family().expect("checked"), degree),
    };
    let pairs: Vec<(usize, usize)> = match entry {
        Some(e) => vec![e],
        None => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
    };
    let mut root = Record::new(format!("series {} up to degree {degree} via {route}", source.label()));
    for (i, j) in pairs {
        let poly = psi.poly(i, j);
        let name = format!("({i},{j})");
        let rendered = match (basis, psi.alphabet()) {
            (Basis::Ab, Alphabet::Ab) | (Basis::Cd, Alphabet::Cd) => Record::info(name, poly),
            (Basis::Ab, _) => Record::info(name, poly.cd_to_ab()?),
            (Basis::Cd, _) => match ab_to_cd_graded(poly) {
                Ok(cd) => Record::info(name, cd),
                Err(e @ Error::NotInCdSpan { .. }) => Record::check(name, false).value(e),
                Err(e) => return Err(e.into()),
            },
        };
        root.push(rendered);
    }
    Ok(root)
}

pub fn cmd_family_verify(spec: FamilySpec, degree: u32) -> CmdResult {
    let mut root = Record::new(format!("family-verify {spec} at degree {degree}"));

    let mut lemmas = Record::new("block relations");
    for l in verify_block_lemmas(spec) {
        lemmas.push(Record::check(l.relation, l.holds));
    }
    root.push(lemmas);

    let m = family_matrix(spec);
    let psi = closed_form_psi(spec, degree);
    root.push(match verify_series_equations(&m, &psi, degree)? {
        EquationOutcome::Pass => Record::check("closed form satisfies both series equations", true),
        EquationOutcome::Fail { equation, i, j, degree } => {
            Record::check("closed form satisfies both series equations", false)
                .value(format!("{equation} equation fails at ({i},{j}) in degree {degree}"))
        }
    });

    let cross = crosscheck_family(spec, degree)?;
    let mut node = Record::new("crosscheck");
    node.push(Record::info("pairs", cross.pairs.len()));
    node.push(pair_record("closed form matches d-weighted sum", &cross.pairs, |p| {
        p.closed_matches_formula
    }));
    node.push(pair_record("chain series matches d-weighted sum", &cross.pairs, |p| {
        p.chains_match_formula
    }));
    node.push(match cross.closed_vs_chains {
        None => Record::check("closed form equals chain series", true).value("every entry"),
        Some((i, j)) => Record::check("closed form equals chain series", false).value(format!("differs at ({i},{j})")),
    });
    if let Some(ok) = cross.corner_vanishes {
        node.push(Record::check("corner constant term vanishes", ok));
    }
    Ok(root.child(node))
}

fn pair_record(name: &str, pairs: &[PairCheck], ok: fn(&PairCheck) -> bool) -> Record {
    let bad: Vec<String> = pairs
        .iter()
        .filter(|p| !ok(p))
        .map(|p| format!("({},{})", p.i, p.j))
        .collect();
    if bad.is_empty() {
        Record::check(name, true).value("all pairs")
    } else {
        Record::check(name, false).value(bad.join(" "))
    }
}

pub fn cmd_shelling(source: &Source, pmax: u32, oracle: bool) -> CmdResult {
    if pmax == 0 {
        return Err(InputError("--pmax must be positive".into()));
    }
    let oracle_r = match (oracle, source.family()) {
        (false, _) => None,
        (true, Some(spec)) if spec.family() == Family::M && spec.r() >= 1 => Some(spec.r() as usize),
        (true, _) => return Err(InputError("--oracle needs --family M with r >= 1".into())),
    };
    let m = source.load()?;
    let mut root = Record::new(format!("shelling {} up to length {pmax}", source.label()));
    match shellability_certificate(&m, pmax)? {
        ShellingCertificate::Certified { p_max } => {
            root.push(
                Record::check("certificate", true)
                    .value(format!("every reduced power up to {p_max} is zero or one monomial")),
            );
            root.push(Record::info(
                "consequence",
                format!("intervals of length <= {p_max} are shellable"),
            ));
        }
        ShellingCertificate::Refuted { p, counterexamples } => {
            let mut node = Record::check("certificate", false).value(format!("refuted at length {p}"));
            for c in counterexamples {
                let shown = if c.count > 2u32.into() {
                    format!("{} + {} + ... ({} walks)", c.witnesses[0], c.witnesses[1], c.count)
                } else {
                    format!("{} + {}", c.witnesses[0], c.witnesses[1])
                };
                node.push(Record::info(format!("({},{})", c.i, c.j), shown));
            }
            root.push(node);
        }
    }
    if let Some(r) = oracle_r {
        let table = reduced_powers(&m, pmax, 2)?;
        let n = m.rows();
        let mut compared = 0usize;
        let mut mismatch = None;
        'outer: for p in 2..=pmax {
            for i in 0..n {
                for j in 0..n {
                    let entry = table.entry(i, j, p).expect("in range");
                    let expected = reduced_power_closed_form(r, p as usize, i, j)?;
                    let agrees = match (&expected, entry.witnesses.as_slice()) {
                        (None, []) => true,
                        (Some(w), [got]) => w == got,
                        _ => false,
                    };
                    if !agrees {
                        mismatch = Some(format!("({i},{j}) at length {p}: table {}", entry.render()));
                        break 'outer;
                    }
                    compared += 1;
                }
            }
        }
        root.push(match mismatch {
            None => Record::check("closed-form oracle", true).value(format!("{compared} entries match")),
            Some(msg) => Record::check("closed-form oracle", false).value(msg),
        });
    }
    Ok(root)
}
