//! Subcommand implementations. Each returns 0 on success and 1 on a
//! mathematical finding; operational errors propagate as `Err`.

use std::fs;
use std::io::Write;
use std::path::Path;

use eulerlab::analysis::{
    decompose, qspan_membership_with, torsion_enumerate, verify_annihilator, AnnihilatorOptions, DecomposeOutcome,
    MembershipOptions, PlusContext,
};
use eulerlab::arith::canonical_conductor;
use eulerlab::euler::{check_strict_with, verify_distribution_with, StrictOptions};
use eulerlab::group_ring::{char_kills_el, characters, idempotent_el};
use eulerlab::json::{from_value, parse_value, to_canonical_string};
use eulerlab::rational::parse_rational;
use eulerlab::{
    coleman_odd, coleman_system, cyclotomic_system, trivial_system, AbelianField, CyclotomicNumber, Error,
    FiniteEulerSystem, PairMode, VerifyOptions,
};
use serde_json::{json, Value};

use crate::{Cli, Command, Format, Global, Input, Kind};

type Result<T> = std::result::Result<T, Error>;

fn canonical_level(level: u64) -> Result<u64> {
    if level == 0 {
        return Err(Error::InvalidLevel(0));
    }
    let c = canonical_conductor(level);
    if c != level {
        eprintln!("warning: level {level} is 2 mod 4; using {c}, which gives the same fields");
    }
    Ok(c)
}

fn read_system(input: &Input) -> Result<FiniteEulerSystem> {
    let path = input
        .file
        .as_ref()
        .or(input.input.as_ref())
        .ok_or_else(|| Error::InvalidArgument("no input file given".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    FiniteEulerSystem::from_json(&parse_value(&text)?)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write output: {e}"));
    match path {
        Some(p) => fs::write(p, text).map_err(io),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
    }
}

/// Emit a report in the requested format, echoing the seed and precision.
fn emit(g: &Global, mut report: Value, text: String) -> Result<()> {
    match g.format {
        Format::Json => {
            report["seed"] = json!(g.seed);
            report["precision_bits"] = json!(g.precision_bits);
            write_out(g.output.as_deref(), &to_canonical_string(&report))
        }
        Format::Text => write_out(g.output.as_deref(), &format!("{text}seed {} precision {} bits\n", g.seed, g.precision_bits)),
    }
}

fn parse_field(s: &str) -> Result<AbelianField> {
    Ok(AbelianField::parse_mnemonic(s)?.canonicalize())
}

fn parse_number(s: &str) -> Result<CyclotomicNumber> {
    let s = s.trim();
    if s.starts_with('{') {
        from_value(parse_value(s)?)
    } else {
        Ok(CyclotomicNumber::from_rational(1, &parse_rational(s)?))
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Make { kind, level, primes } => {
            let level = canonical_level(*level)?;
            let sys = match kind {
                Kind::Cyclotomic => cyclotomic_system(level)?,
                Kind::Coleman if primes.is_empty() => coleman_odd(level)?,
                Kind::Coleman => coleman_system(primes, level)?,
                Kind::Trivial => trivial_system(level)?,
            };
            for note in sys.notes() {
                eprintln!("note: {note}");
            }
            write_out(g.output.as_deref(), &to_canonical_string(&sys.to_json()))?;
            Ok(0)
        }
        Command::Verify { input, all_pairs, include_rational_prime_power } => {
            let sys = read_system(input)?;
            let opts = VerifyOptions {
                mode: if *all_pairs { PairMode::AllPairs } else { PairMode::Covering },
                include_rational_prime_power: *include_rational_prime_power,
            };
            let r = verify_distribution_with(&sys, &opts)?;
            let mut text = format!(
                "level {}: {} pairs checked, {} excluded, {} violations\n",
                r.level,
                r.pairs_checked,
                r.excluded.len(),
                r.violations.len()
            );
            for v in &r.violations {
                text += &format!("violated: {} inside {} (new primes {:?})\n", v.sub, v.sup, v.primes);
            }
            text += if r.passed() { "PASS\n" } else { "FAIL\n" };
            emit(g, r.to_json(), text)?;
            Ok(status(r.passed()))
        }
        Command::Strict { input, literal } => {
            let sys = read_system(input)?;
            let r = check_strict_with(&sys, &StrictOptions { literal: *literal })?;
            let mut text = format!("level {}: {} pairs checked\n", r.level, r.pairs_checked);
            for f in &r.failures {
                text += &format!("not congruent above {}: {} inside {}; residues {:?}\n", f.prime, f.sub, f.sup, f.residues);
            }
            for p in &r.non_integral {
                text += &format!("not integral above {:?}: {} inside {}\n", p.primes, p.sub, p.sup);
            }
            text += if r.passed() { "PASS\n" } else { "FAIL\n" };
            emit(g, r.to_json(), text)?;
            Ok(status(r.passed()))
        }
        Command::Idempotent { field } => {
            let l = parse_field(field)?;
            let el = idempotent_el(&l);
            let group = el.group().clone();
            let mut killed = Vec::new();
            for psi in characters(&group) {
                if char_kills_el(&psi, &l)? {
                    killed.push(psi.exponents().to_vec());
                }
            }
            let text = format!(
                "e_L for {l} over {}:\n{:?}\ncharacters killed: {} of {}\n",
                group.field(),
                el,
                killed.len(),
                group.order()
            );
            let report = json!({"field": l.to_string(), "idempotent": el.to_json(), "killed_characters": killed});
            emit(g, report, text)?;
            Ok(0)
        }
        Command::Annihilator { field, trials } => {
            let l = parse_field(field)?;
            let opts = AnnihilatorOptions { trials: *trials, seed: g.seed, start_bits: g.precision_bits, max_bits: 4096 };
            let r = verify_annihilator(&l, &opts)?;
            let mut text = format!("I_L for {l}: rank {}\n", r.basis.len());
            for b in &r.basis {
                text += &format!("  {b:?}\n");
            }
            text += &format!(
                "basis kills c_L^(1+tau) exactly: {}\nrank equals killed characters ({}): {}\n{} random elements outside I_L certified non-killing\n",
                r.basis_kills,
                r.killed_characters,
                r.rank_matches(),
                r.trials.len()
            );
            text += if r.passed() { "PASS\n" } else { "FAIL\n" };
            emit(g, r.to_json(), text)?;
            Ok(status(r.passed()))
        }
        Command::Membership { field, value } => {
            let l = parse_field(field)?;
            let x = parse_number(value)?;
            let ctx = PlusContext::new(&l);
            let m = qspan_membership_with(&ctx, &x, &MembershipOptions::at(g.precision_bits))?;
            let text = match &m.coefficients {
                Some(c) => format!("member of the span for {l}; coefficients {c:?}\n"),
                None => format!("not in the span for {l} (interval certificate)\n"),
            };
            let mut report = m.to_json();
            report["field"] = json!(l.to_string());
            emit(g, report, text)?;
            Ok(0)
        }
        Command::Decompose { input } => {
            let sys = read_system(input)?;
            match decompose(&sys)? {
                DecomposeOutcome::Found(d) => {
                    let text = format!(
                        "level {}: r = {:?}\nColeman pattern: {:?}\nrecomposition equal at every field\n",
                        d.level, d.r, d.pattern
                    );
                    emit(g, d.to_json(), text)?;
                    Ok(0)
                }
                DecomposeOutcome::NotFound(why) => {
                    let text = format!("no decomposition found at level {}: {why}\n", sys.level());
                    emit(g, json!({"level": sys.level(), "found": false, "obstruction": why}), text)?;
                    Ok(1)
                }
            }
        }
        Command::Torsion { level } => {
            let level = canonical_level(*level)?;
            let r = torsion_enumerate(level)?;
            let mut text = format!(
                "level {level}: {} systems, Coleman span of size {} contained: {}, all verified: {}\n",
                r.systems.len(),
                r.coleman_span.len(),
                r.span_contained,
                r.all_verified
            );
            text += &format!(
                "{} outside the Coleman span, {} of them not c^r times a sign pattern\n",
                r.extras.len(),
                r.outside_module.len()
            );
            for &i in &r.outside_module {
                text += &format!("finding: system {i} (order {}) is outside the Coleman span and the cyclotomic module\n", r.orders[i]);
            }
            let ok = r.span_contained && r.all_verified;
            emit(g, r.to_json(), text)?;
            Ok(status(ok))
        }
    }
}
