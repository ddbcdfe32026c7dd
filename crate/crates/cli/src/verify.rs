//! Self-checks comparing closed formulas against direct computation.

use std::fmt::Write as _;

use clap::ValueEnum;
use cuplen_core::bounds::{
    engine_upper_lemma_f, full_report, prop_b_lower, prop_d_upper, rational_bounds, FieldTag, ReportOptions,
};
use cuplen_core::gf2poly::{ideal_gens_k3, inverse_series, Gf2Polynomial, Monomial, Vars};
use cuplen_core::grassmann::{available_target_dim, GrassmannPresentation, OrientedContext, ReducedK3Ideal};
use cuplen_core::heights::{lemma_f_height, w2_height, HeightTarget};
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{to_json, CliError, Exit, Format, Output, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    GGenerators,
    TwoRoute,
    LemmaF,
    Heights,
    Bounds,
    Category,
    Structure,
}

impl Group {
    fn name(self) -> &'static str {
        match self {
            Group::GGenerators => "g-generators",
            Group::TwoRoute => "two-route",
            Group::LemmaF => "lemma-f",
            Group::Heights => "heights",
            Group::Bounds => "bounds",
            Group::Category => "category",
            Group::Structure => "structure",
        }
    }
}

#[derive(Debug, Serialize)]
struct Check {
    group: Group,
    check: String,
    pass: bool,
    detail: String,
}

type CheckResult = Result<(bool, String), CliError>;

fn context(cfg: &RunConfig, n: u32, k: u32) -> Result<OrientedContext, CliError> {
    let base = GrassmannPresentation::build_with_caps(n, k, cfg.caps)?;
    Ok(OrientedContext::with_caps(base, cfg.caps)?)
}

fn verdict(failures: Vec<String>, ok: String) -> (bool, String) {
    if failures.is_empty() {
        (true, ok)
    } else {
        let n = failures.len();
        let shown: Vec<String> = failures.into_iter().take(5).collect();
        (false, format!("{n} failure(s): {}", shown.join("; ")))
    }
}

fn g_generators() -> Vec<(String, CheckResult)> {
    let r3 = Vars::without_w1(3);
    let cases: [(u32, [&str; 3]); 2] =
        [(6, ["w2^2", "0", "w3^2 + w2^3"]), (9, ["w2^2*w3", "w2*w3^2 + w2^4", "w3^3"])];
    cases
        .into_iter()
        .map(|(n, expected)| {
            let run = || -> CheckResult {
                let gens = ideal_gens_k3(n)?;
                let mut failures = Vec::new();
                for (g, text) in gens.iter().zip(expected) {
                    let want = Gf2Polynomial::parse(r3, text)?;
                    if *g != want {
                        failures.push(format!("got {g}, expected {text}"));
                    }
                }
                Ok(verdict(failures, expected.join(" | ")))
            };
            (format!("generators n={n}"), run())
        })
        .collect()
}

fn two_route(cfg: &RunConfig, max_n: u32) -> Vec<(String, CheckResult)> {
    let r3 = Vars::without_w1(3);
    let series_check = || -> CheckResult {
        let series = inverse_series(r3, max_n);
        let mut failures = Vec::new();
        for n in 6..=max_n {
            for (g, d) in ideal_gens_k3(n)?.iter().zip(n - 2..=n) {
                if g != &series[d as usize] {
                    failures.push(format!("n={n} degree {d}"));
                }
            }
        }
        Ok(verdict(failures, format!("closed generators equal series components for n=6..{max_n}")))
    };
    let mut out = vec![("generators vs inverse series".to_string(), series_check())];
    let membership: Vec<(String, CheckResult)> = (6..=max_n)
        .into_par_iter()
        .map(|n| {
            let run = || -> CheckResult {
                let j = ReducedK3Ideal::new(n)?;
                let o = context(cfg, n, 3)?;
                let mut failures = Vec::new();
                let mut checked = 0;
                for d in 0..=o.formal_dim() {
                    for m in r3.monomials_of_degree(d) {
                        let lifted = Monomial::new(Vars::full(3), vec![0, m.exps()[0], m.exps()[1]])?;
                        checked += 1;
                        if j.contains_monomial(&m)? == o.oriented_nonzero(&lifted)? {
                            failures.push(m.to_string());
                        }
                    }
                }
                Ok(verdict(failures, format!("{checked} monomials agree")))
            };
            (format!("reduced ideal vs oriented quotient ({n},3)"), run())
        })
        .collect();
    out.extend(membership);
    out
}

fn lemma_f_instances(max_n: u32) -> Vec<(u32, u32)> {
    (3..=5u32).flat_map(|k| (2 * k..=max_n).map(move |n| (n, k))).filter(|&(n, _)| n >= 6).collect()
}

fn lemma_f(cfg: &RunConfig, max_n: u32) -> Vec<(String, CheckResult)> {
    lemma_f_instances(max_n)
        .into_par_iter()
        .map(|(n, k)| {
            let run = || -> CheckResult {
                let base = GrassmannPresentation::build_with_caps(n, k, cfg.caps)?;
                let direct = w2_height(HeightTarget::Unoriented(&base))?.height;
                let closed = lemma_f_height(n, k)?;
                Ok((direct == closed, format!("direct {direct}, closed form {closed}")))
            };
            (format!("ht(w2) on G({n},{k})"), run())
        })
        .collect()
}

fn heights(cfg: &RunConfig, max_n: u32) -> Vec<(String, CheckResult)> {
    let mut cases: Vec<(u32, u32, Option<u32>)> = vec![(6, 3, Some(1)), (9, 3, Some(4))];
    cases.extend((6..=max_n).filter(|n| ![6, 9].contains(n)).map(|n| (n, 3, None)));
    cases
        .into_par_iter()
        .map(|(n, k, expected)| {
            let run = || -> CheckResult {
                let o = context(cfg, n, k)?;
                let h = o.w2_height()?;
                let unoriented = w2_height(HeightTarget::Unoriented(o.base()))?.height;
                let mut failures = Vec::new();
                if let Some(e) = expected {
                    if h != e {
                        failures.push(format!("expected {e}"));
                    }
                }
                if h == 0 || h > unoriented {
                    failures.push(format!("outside [1, {unoriented}]"));
                }
                if 2 * h != available_target_dim(n)? {
                    failures.push("reduced-ideal target dimension differs".into());
                }
                Ok(verdict(failures, format!("oriented height {h}, unoriented {unoriented}")))
            };
            (format!("oriented ht(w2) on G~({n},{k})"), run())
        })
        .collect()
}

fn bounds(max_n: u32) -> Vec<(String, CheckResult)> {
    let opts = ReportOptions::default();
    let mut out = Vec::new();
    let spot = || -> CheckResult {
        let r = full_report(6, 3, FieldTag::Gf2, &opts, None)?;
        let mut failures = Vec::new();
        if (r.closed_lower, r.closed_upper) != (3, 3) {
            failures.push(format!("(6,3) -> [{}, {}]", r.closed_lower, r.closed_upper));
        }
        for ((n, k), e) in [((9, 3), 8), ((10, 4), 12), ((12, 5), 16)] {
            let got = prop_d_upper(n, k)?;
            if got != e {
                failures.push(format!("({n},{k}) upper {got}, expected {e}"));
            }
        }
        for ((n, k), e) in [((8, 4), 4), ((13, 4), 9), ((10, 4), 6)] {
            let r = rational_bounds(n, k)?;
            if (r.lower, r.upper, r.exact) != (e, e, true) {
                failures.push(format!("rational ({n},{k}) -> [{}, {}]", r.lower, r.upper));
            }
        }
        Ok(verdict(failures, "spot values match".into()))
    };
    out.push(("spot values".to_string(), spot()));
    let consistency = || -> CheckResult {
        let mut failures = Vec::new();
        let mut count = 0;
        for (n, k) in lemma_f_instances(max_n).into_iter().filter(|&nk| nk != (6, 3)) {
            count += 1;
            let table = prop_d_upper(n, k)?;
            let (engine, _) = engine_upper_lemma_f(n, k, 3)?;
            let lower = prop_b_lower(n, k)?;
            if table != engine {
                failures.push(format!("({n},{k}) table {table} vs engine {engine}"));
            }
            if lower > table {
                failures.push(format!("({n},{k}) lower {lower} above upper {table}"));
            }
        }
        Ok(verdict(failures, format!("{count} instances consistent")))
    };
    out.push(("closed-form upper vs inequality engine".to_string(), consistency()));
    out
}

fn category(max_n: u32) -> Vec<(String, CheckResult)> {
    let run = || -> CheckResult {
        let opts = ReportOptions::default();
        let mut failures = Vec::new();
        for n in 6..=max_n {
            let r = full_report(n, 3, FieldTag::Gf2, &opts, None)?;
            let expected = match n {
                6 => (4, 5),
                9..=12 => (6, (3 * n - 7) / 2),
                _ if n % 2 == 1 => ((n + 5) / 2, (3 * n - 7) / 2),
                _ => ((n + 4) / 2, (3 * n - 7) / 2),
            };
            let got = (r.closed_cat_lower, r.cat_upper);
            if got != expected {
                failures.push(format!("({n},3) -> {got:?}, expected {expected:?}"));
            }
        }
        Ok(verdict(failures, format!("k=3 intervals for n=6..{max_n}")))
    };
    vec![("category intervals".to_string(), run())]
}

fn structure(cfg: &RunConfig, max_n: u32) -> Vec<(String, CheckResult)> {
    let instances: Vec<(u32, u32)> =
        (3..=5u32).flat_map(|k| (2 * k..=max_n.min(2 * k + 6)).map(move |n| (n, k))).filter(|&(n, _)| n >= 6).collect();
    instances
        .into_par_iter()
        .map(|(n, k)| {
            let run = || -> CheckResult {
                let p = GrassmannPresentation::build_with_caps(n, k, cfg.caps)?;
                let b = p.betti()?;
                let total: u128 = b.iter().map(|&x| x as u128).sum();
                let binom = (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1));
                let mut failures = Vec::new();
                if !b.iter().eq(b.iter().rev()) {
                    failures.push("not palindromic".into());
                }
                if total != binom {
                    failures.push(format!("total {total} vs C({n},{k}) = {binom}"));
                }
                Ok(verdict(failures, format!("total {total}, palindromic")))
            };
            (format!("Betti numbers of G({n},{k})"), run())
        })
        .collect()
}

pub fn verify(cfg: &RunConfig, only: &[Group], max_n: u32) -> Result<Output, CliError> {
    if max_n < 6 {
        return Err(CliError::Usage(format!("--max-n must be at least 6, got {max_n}")));
    }
    let mut groups: Vec<Group> = if only.is_empty() { Group::value_variants().to_vec() } else { only.to_vec() };
    groups.sort();
    groups.dedup();
    let mut checks = Vec::new();
    for g in groups {
        let results = match g {
            Group::GGenerators => g_generators(),
            Group::TwoRoute => two_route(cfg, max_n),
            Group::LemmaF => lemma_f(cfg, max_n),
            Group::Heights => heights(cfg, max_n),
            Group::Bounds => bounds(max_n),
            Group::Category => category(max_n),
            Group::Structure => structure(cfg, max_n),
        };
        for (check, r) in results {
            let (pass, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
            checks.push(Check { group: g, check, pass, detail });
        }
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let body = match cfg.format {
        Format::Json => to_json(&checks),
        Format::Csv => {
            let mut out = String::from("group,check,pass,detail\n");
            for c in &checks {
                writeln!(out, "{},{},{},\"{}\"", c.group.name(), c.check, c.pass, c.detail.replace('"', "\"\""))
                    .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in &checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} [{}] {}: {}", c.group.name(), c.check, c.detail).unwrap();
            }
            writeln!(out, "verify: {} passed, {failed} failed", checks.len() - failed).unwrap();
            out
        }
    };
    Ok(Output { body, exit: if failed > 0 { Exit::CheckFailure } else { Exit::Ok } })
}
