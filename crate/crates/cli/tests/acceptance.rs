//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use impspace::enumerate::{rank_base, rank_canonical, unrank_base, CountTable};
use impspace::explore::{trivial_bound, ComplexityEntry, Family};
use impspace::halting::{draw_halting_sample, ecdf, parse_rational, sample_size, EstimationParams, SampleConfig};
use impspace::lang::{bits_to_nat, nat_to_bits};
use impspace::{parse, run, Bitstring};
use impspace_cli::args::Cli;
use impspace_cli::jobs::{CensusDoc, FamilyRow};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn cli(args: &[&str]) -> Result<String, String> {
    let argv = std::iter::once("impspace").chain(args.iter().copied()).chain(["--quiet"]);
    let parsed = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    impspace_cli::run(parsed, &mut out).map_err(|e| e.to_string())?;
    Ok(String::from_utf8(out).expect("utf-8 output"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const TABLE2: [(u32, u64, u64); 13] = [
    (0, 0, 0),
    (1, 1, 1),
    (2, 0, 1),
    (3, 3, 4),
    (4, 104, 108),
    (5, 2124, 2232),
    (6, 35770, 38002),
    (7, 546611, 584613),
    (8, 7991176, 8575789),
    (9, 114513832, 123089621),
    (10, 1631934090, 1755023711),
    (11, 23318957744, 25073981455),
    (12, 335696750370, 360770731825),
];

fn counting() -> Check {
    let text = cli(&["count", "--max-length", "12"])?;
    let mut lines = text.lines();
    ensure(lines.next() == Some("length,count,cumulative"), || "missing header".into())?;
    for (len, count, cumulative) in TABLE2 {
        let want = format!("{len},{count},{cumulative}");
        let got = lines.next().unwrap_or_default();
        ensure(got == want, || format!("row {len}: got `{got}`, want `{want}`"))?;
    }
    ensure(lines.next().is_none(), || "extra rows".into())
}

fn enumeration_cross_check() -> Check {
    let table = CountTable::new(6);
    let mut seen = HashSet::new();
    let mut per_length = BTreeMap::new();
    for k in 0..38_002u64 {
        let p = table.unrank_canonical(&BigUint::from(k)).map_err(|e| e.to_string())?;
        let text = p.to_string();
        let back = parse(&text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == p && back.to_string() == text, || format!("unstable rendering {text}"))?;
        ensure(seen.insert(text.clone()), || format!("duplicate {text}"))?;
        *per_length.entry(p.len()).or_insert(0u64) += 1;
    }
    ensure(CountTable::new(7).unrank_canonical(&BigUint::from(38_002u32)).map(|p| p.len()) == Ok(7), || {
        "position 38002 should start length 7".into()
    })?;
    for (len, count, _) in &TABLE2[..=6] {
        let got = per_length.get(len).copied().unwrap_or(0);
        ensure(got == *count, || format!("length {len}: {got} programs, want {count}"))?;
    }
    Ok(())
}

const TABLE4: [(u32, u64, u64, f64, f64); 6] = [
    (1, 1, 0, 100.0, 0.0),
    (3, 2, 1, 66.7, 33.3),
    (4, 103, 1, 99.0, 1.0),
    (5, 2059, 65, 96.9, 3.1),
    (6, 34491, 1279, 96.4, 3.6),
    (7, 522060, 24551, 95.5, 4.5),
];

fn halting_census(dir: &Path) -> Check {
    let out = dir.join("sweep7");
    let out_s = out.to_str().unwrap();
    cli(&["sweep", "--max-length", "7", "--budget", "10000", "--no-records", "--out", out_s])?;
    let text = std::fs::read_to_string(out.join("census.json")).map_err(|e| e.to_string())?;
    let doc: CensusDoc = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(doc.lengths.len() == TABLE4.len(), || format!("{} lengths in census", doc.lengths.len()))?;
    for (len, h, n, hp, np) in TABLE4 {
        let row = doc.lengths.get(&len).ok_or(format!("length {len} missing"))?;
        ensure(
            (row.halting, row.non_halting, row.halting_percent, row.non_halting_percent) == (h, n, hp, np),
            || format!("length {len}: ({}, {}) want ({h}, {n})", row.halting, row.non_halting),
        )?;
    }
    Ok(())
}

fn sample_sizes() -> Check {
    let rows = [
        ("0.01", "0.009", "0.01", 28_427),
        ("0.01", "0.001", "0.01", 2_302_586),
        ("0.01", "0.001", "0.001", 3_453_878),
        ("0.001", "0.0005", "0.001", 13_815_511),
    ];
    for (e, l, d, want) in rows {
        let params = EstimationParams::parse(e, l, d).map_err(|err| err.to_string())?;
        let got = params.sample_size().map_err(|err| err.to_string())?;
        ensure(got == want, || format!("(ε={e}, λ={l}, δ={d}): {got}, want {want}"))?;
    }
    Ok(())
}

/// Canonical bitstring order by explicit increment.
fn next_string(bits: &mut Vec<bool>) {
    match bits.iter().rposition(|&x| !x) {
        Some(i) => {
            bits[i] = true;
            bits[i + 1..].iter_mut().for_each(|x| *x = false);
        }
        None => *bits = vec![false; bits.len() + 1],
    }
}

fn codec_and_worked_example() -> Check {
    let text = cli(&["run", "(x[0] := 2; (x[1] := 1; x[2] := 3))"])?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(v["halted"] == true && v["output"] == "1000", || format!("worked example gave {text}"))?;
    let mut bits = Vec::new();
    for n in 0u64..(1 << 20) {
        let b = nat_to_bits(&BigUint::from(n));
        ensure(b.bits() == bits.as_slice(), || format!("natToString({n}) = {b}"))?;
        ensure(bits_to_nat(&b) == BigUint::from(n), || format!("stringToNat({b}) ≠ {n}"))?;
        next_string(&mut bits);
    }
    Ok(())
}

const POWS2: &[(u64, u32, &str)] = &[
    (0, 25, "0"),
    (1, 25, "10"),
    (2, 25, "011"),
    (3, 25, "00100"),
    (4, 25, "000101"),
    (5, 25, "0000110"),
    (6, 25, "00000111"),
    (7, 25, "0000001000"),
    (8, 25, "00000001001"),
    (9, 25, "000000001010"),
    (10, 26, "0000000001011"),
    (11, 26, "00000000001100"),
    (12, 26, "000000000001101"),
    (13, 26, "0000000000001110"),
    (14, 26, "00000000000001111"),
    (15, 26, "0000000000000010000"),
    (16, 26, "00000000000000010001"),
    (17, 26, "000000000000000010010"),
    (18, 26, "0000000000000000010011"),
    (19, 26, "00000000000000000010100"),
    (20, 26, "000000000000000000010101"),
    (21, 26, "0000000000000000000010110"),
    (22, 26, "00000000000000000000010111"),
    (23, 26, "000000000000000000000011000"),
];

const FACT: &[(u64, u32, &str)] = &[
    (0, 26, "0"),
    (1, 26, "00"),
    (2, 26, "11"),
    (3, 26, "1100"),
    (4, 26, "100101"),
    (5, 26, "11100110"),
    (6, 26, "01101000111"),
    (7, 26, "001110110001000"),
    (8, 26, "001110110000001001"),
    (9, 26, "011000100110000001010"),
    (10, 27, "101110101111100000001011"),
    (11, 27, "0011000010001010100000001100"),
];

const EXPT: &[(u64, u32, &str)] = &[
    (0, 25, "0"),
    (1, 25, "00"),
    (2, 25, "011"),
    (3, 25, "110000"),
    (4, 25, "0000000101"),
    (5, 25, "1000011011010"),
    (6, 25, "01101100100000111"),
    (7, 25, "1001001000011111000000"),
    (8, 25, "000000000000000000000001001"),
];

const EXPT_POWS2: &[(u64, u32, &str)] = &[
    (0, 26, ""),
    (1, 26, "00"),
    (2, 26, "00011"),
    (3, 26, "10011010001000"),
    (4, 26, "0000000000000000000000000000000101"),
];

fn families() -> Check {
    let tables = [
        (Family::Pows2, POWS2),
        (Family::Fact, FACT),
        (Family::Expt, EXPT),
        (Family::ExptPows2, EXPT_POWS2),
    ];
    for (family, rows) in tables {
        let last = rows.last().unwrap().0.to_string();
        let text = cli(&["family", family.name(), "--n", "0", "--to", &last, "--run"])?;
        let got: Vec<FamilyRow> = text.lines().map(serde_json::from_str).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        ensure(got.len() == rows.len(), || format!("{family}: {} rows", got.len()))?;
        for (row, &(n, len, out)) in got.iter().zip(rows) {
            ensure(
                row.n == n && row.program_length == len && row.halted == Some(true) && row.output == out,
                || format!("{family} n={n}: length {} output `{}`", row.program_length, row.output),
            )?;
            ensure(row.output_length == Some(out.len()), || format!("{family} n={n}: output length"))?;
        }
    }
    Ok(())
}

fn trivial_bounds(dir: &Path) -> Check {
    let out = dir.join("ctm7");
    cli(&["ctm", "--max-length", "7", "--budget", "10000", "--out", out.to_str().unwrap()])?;
    let mut reader = csv::Reader::from_path(out.join("complexity.csv")).map_err(|e| e.to_string())?;
    let entries: Vec<ComplexityEntry> = reader.deserialize().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let found: BTreeMap<Bitstring, u32> = entries.iter().map(|e| (e.output.clone(), e.best_length)).collect();
    let mut compared = 0;
    for e in &entries {
        let (_, bound) = trivial_bound(&e.output);
        ensure(e.best_length <= bound || bound > 7, || format!("`{}` beats nothing", e.output))?;
        if bound <= 7 {
            ensure(e.best_length == bound, || {
                format!("`{}`: best length {} but trivial bound {bound}", e.output, e.best_length)
            })?;
            compared += 1;
        }
    }
    // Every string whose trivial program fits must have been discovered.
    let mut bits = Vec::new();
    let mut n = 0u64;
    loop {
        let b = Bitstring::from_bits(bits.clone());
        let (_, bound) = trivial_bound(&b);
        if bound > 7 {
            break;
        }
        ensure(found.contains_key(&b), || format!("`{b}` (position {n}) never produced"))?;
        next_string(&mut bits);
        n += 1;
    }
    ensure(compared as u64 == n, || format!("compared {compared} outputs, expected {n}"))?;
    let eps = entries.iter().find(|e| e.output.is_empty()).ok_or("ε missing")?;
    ensure(eps.best_length == 1 && eps.witness == 0, || "ε should be witnessed by skip at 0".into())
}

fn property_suites(dir: &Path) -> Check {
    let table = CountTable::new(9);
    for k in 0..1_000_000u64 {
        let kb = BigUint::from(k);
        let p = table.unrank_canonical(&kb).map_err(|e| e.to_string())?;
        ensure(rank_canonical(&p) == kb, || format!("canonical position {k} does not round-trip"))?;
    }
    for k in 0..100_000u64 {
        let kb = BigUint::from(k);
        let p = unrank_base(&kb);
        ensure(rank_base(&p) == kb, || format!("base position {k} does not round-trip"))?;
        for c in p.children() {
            ensure(rank_base(c) < kb, || format!("subprogram of base position {k} ranks after it"))?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let p = table.unrank_canonical(&BigUint::from(rng.gen_range(0..584_613u64))).unwrap();
        let b = rng.gen_range(1..50);
        let (small, big) = (run(&p, b), run(&p, b + rng.gen_range(0..500)));
        ensure(!small.halted || (big.halted && big.steps == small.steps && big.store == small.store), || {
            format!("budget monotonicity fails for {p}")
        })?;
    }

    let one = dir.join("det1");
    let many = dir.join("det4");
    cli(&["sweep", "--max-length", "6", "--workers", "1", "--out", one.to_str().unwrap()])?;
    cli(&["sweep", "--max-length", "6", "--workers", "4", "--out", many.to_str().unwrap()])?;
    for f in ["records.csv", "census.json", "histograms.json"] {
        let a = std::fs::read(one.join(f)).map_err(|e| e.to_string())?;
        let b = std::fs::read(many.join(f)).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{f} differs between 1 and 4 workers"))?;
    }

    let s1 = dir.join("s1");
    let s2 = dir.join("s2");
    for (d, w) in [(&s1, "1"), (&s2, "3")] {
        cli(&["sample", "--max-length", "9", "--n", "1000", "--seed", "42", "--workers", w, "--out", d.to_str().unwrap()])?;
    }
    for f in ["sample.csv", "sample.json"] {
        let a = std::fs::read(s1.join(f)).map_err(|e| e.to_string())?;
        let b = std::fs::read(s2.join(f)).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{f} differs between identical seeded runs"))?;
    }

    let cfg = SampleConfig {
        max_length: 9,
        n: 20_000,
        probe_budget: 10_000,
        seed: 2024,
        shards: 16,
        params: EstimationParams::parse("0.001", "0.0005", "0.001").unwrap(),
    };
    let sample = draw_halting_sample(&cfg).map_err(|e| e.to_string())?;
    let rt = sample.runtimes();
    let mut prev = ecdf(&rt, 0).unwrap();
    for t in 1..=sample.threshold().unwrap() {
        let cur = ecdf(&rt, t).unwrap();
        ensure(cur >= prev, || format!("ecdf decreases at {t}"))?;
        prev = cur;
    }
    ensure(prev == 1.into(), || "ecdf does not reach 1 at the threshold".into())?;
    let rate = sample.halting_rate();
    println!("      halting rate over lengths ≤ 9: {rate:.4} ({} rejections)", sample.rejections);
    ensure((rate - 0.94).abs() <= 0.01, || format!("halting rate {rate:.4} outside 0.94 ± 0.01"))?;
    let n = sample_size(&parse_rational("0.0005").unwrap(), &parse_rational("0.001").unwrap()).unwrap();
    ensure(n == 13_815_511, || "sample size drifted".into())
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temporary directory");
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("1 counting exactness (lengths 0-12)", Box::new(counting)),
        ("2 enumeration/count cross-validation (38002 programs)", Box::new(enumeration_cross_check)),
        ("3 halting census, lengths <= 7", Box::new(|| halting_census(dir.path()))),
        ("4 sample-size formula", Box::new(sample_sizes)),
        ("5 output codec and worked example", Box::new(codec_and_worked_example)),
        ("6 program families", Box::new(families)),
        ("7 trivial-bound property, lengths <= 7", Box::new(|| trivial_bounds(dir.path()))),
        ("8 property suites and halting rate", Box::new(|| property_suites(dir.path()))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  criterion {name}  [{:.1?}]", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
