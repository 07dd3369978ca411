//! Acceptance suite: one PASS/FAIL line per criterion, each with its time
//! limit. Exits nonzero if anything fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use parakl::dyck::{configurations, q_rule_i, verify_inversion, Rule};
use parakl::ls_tree::{build_tree, config_to_labelling, enumerate_labellings, labelling_to_config, ls_polynomial};
use parakl::sn_oracle::{verify_full_duality, verify_parabolic_bridge, verify_projection};
use parakl::table::{build, Method};
use parakl::verify::{bar_invariance, brute_force_rule_i, cross_method, duality, linkage_expansion, weight_identity};
use parakl::{BinaryString, Path, Poly, Result, Sign};

const P_MINUS_ORDER: [&str; 6] = ["--++", "-+-+", "-++-", "+--+", "+-+-", "++--"];
const P_MINUS: [[&str; 6]; 6] = [
    ["1", "t^-1", "0", "0", "0", "t^-2"],
    ["", "1", "t^-1", "t^-1", "t^-2", "t^-1"],
    ["", "", "1", "", "t^-1", "0"],
    ["", "", "", "1", "t^-1", "0"],
    ["", "", "", "", "1", "t^-1"],
    ["", "", "", "", "", "1"],
];
const P_PLUS_ORDER: [&str; 6] = ["++--", "+-+-", "+--+", "-++-", "-+-+", "--++"];
const P_PLUS: [[&str; 6]; 6] = [
    ["1", "t^-1", "t^-2", "t^-2", "t^-3 + t^-1", "t^-4"],
    ["", "1", "t^-1", "t^-1", "t^-2", "t^-3"],
    ["", "", "1", "", "t^-1", "t^-2"],
    ["", "", "", "1", "t^-1", "t^-2"],
    ["", "", "", "", "1", "t^-1"],
    ["", "", "", "", "", "1"],
];

fn golden(order: &[&str; 6], rows: &[[&str; 6]; 6], sign: Sign) -> Result<bool> {
    let want: Vec<Vec<Option<Poly>>> = rows
        .iter()
        .map(|r| r.iter().map(|c| (!c.is_empty()).then(|| c.parse().expect("golden cell"))).collect())
        .collect();
    for method in Method::all_for(sign) {
        let t = build(4, 2, sign, method)?;
        let header: Vec<String> = t.paths.paths().iter().map(|p| p.to_string()).collect();
        if header != order.map(String::from) || t.cells != want {
            println!("    {} disagrees with the golden table", method.name());
            return Ok(false);
        }
    }
    Ok(true)
}

fn plus_path(s: &str) -> Path {
    s.parse::<BinaryString>().expect("string").to_path(Sign::Plus).expect("path")
}

fn section_example() -> Result<bool> {
    let (upper, lower) = (plus_path("111212222"), plus_path("211212221"));
    // t^-8 (1 + 2t^2 + t^4 + t^6)
    let want = Poly::from_i64_terms(&[(-8, 1), (-6, 2), (-4, 1), (-2, 1)])?;
    Ok(configurations(&lower, &upper, Rule::I)?.len() == 5 && q_rule_i::<i64>(&lower, &upper)? == want)
}

fn eight_step_example() -> Result<bool> {
    let (lower, upper): (Path, Path) = ("-++-+--+".parse()?, "++++----".parse()?);
    let want = Poly::from_i64_terms(&[(-8, 1), (-6, 2), (-4, 1), (-2, 1)])?;
    let tree = build_tree(&lower, &upper)?;
    let labellings = enumerate_labellings(&tree);
    if labellings.len() != 5 || ls_polynomial::<i64>(&lower, &upper)? != want || q_rule_i::<i64>(&lower, &upper)? != want {
        return Ok(false);
    }
    let mut images = Vec::new();
    for nu in &labellings {
        let c = labelling_to_config(&lower, &upper, nu)?;
        if &config_to_labelling(&c)? != nu {
            return Ok(false);
        }
        images.push(c);
    }
    let mut conf = configurations(&lower, &upper, Rule::I)?;
    images.sort_by_key(|c| format!("{c:?}"));
    conf.sort_by_key(|c| format!("{c:?}"));
    Ok(images == conf)
}

fn for_all_k(max_n: usize, f: fn(usize, usize) -> Result<bool>) -> Result<bool> {
    for n in 0..=max_n {
        for k in 0..=n {
            if !f(n, k)? {
                println!("    fails at N={n} K={k}");
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn bridge_and_duality() -> Result<bool> {
    for n in 1..=5 {
        for k in 0..=n {
            if !verify_parabolic_bridge(n, k)? || !verify_projection(n, k)? {
                println!("    bridge fails at N={n} K={k}");
                return Ok(false);
            }
        }
        if !verify_full_duality(n)? {
            println!("    full duality fails at N={n}");
            return Ok(false);
        }
    }
    Ok(true)
}

fn linkage_expansions() -> Result<bool> {
    for n in (2..=8).step_by(2) {
        if !linkage_expansion(n)? {
            println!("    fails at N={n}");
            return Ok(false);
        }
    }
    Ok(true)
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<bool>,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "golden N=4 K=2 tables, all methods", limit: secs(1), run: || {
            Ok(golden(&P_MINUS_ORDER, &P_MINUS, Sign::Minus)? && golden(&P_PLUS_ORDER, &P_PLUS, Sign::Plus)?)
        } },
        Criterion { id: 2, name: "Rule I example 111212222 / 211212221", limit: secs(1), run: section_example },
        Criterion { id: 3, name: "tree labellings of the N=8 example", limit: secs(1), run: eight_step_example },
        Criterion { id: 4, name: "duality of P^- and P^+, N<=8", limit: secs(60), run: || for_all_k(8, duality) },
        Criterion { id: 5, name: "Q^I Q^II inversion, N<=8", limit: secs(60), run: || for_all_k(8, verify_inversion) },
        Criterion { id: 6, name: "cross-method equality, N<=8", limit: secs(60), run: || for_all_k(8, cross_method) },
        Criterion { id: 7, name: "bar invariance of C^+ and C^-, N<=7", limit: secs(60), run: || for_all_k(7, bar_invariance) },
        Criterion { id: 8, name: "S_N bridge, full duality, sharp invariance, N<=5", limit: secs(120), run: bridge_and_duality },
        Criterion { id: 9, name: "weight identity, N<=8", limit: secs(60), run: || for_all_k(8, weight_identity) },
        Criterion { id: 10, name: "linkage expansion of m_beta, K=N/2, N<=8", limit: secs(60), run: linkage_expansions },
        Criterion { id: 11, name: "unpruned Rule I enumeration, N<=6", limit: secs(60), run: || for_all_k(6, brute_force_rule_i) },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, note) = match outcome {
            Ok(true) if elapsed <= c.limit => (true, String::new()),
            Ok(true) => (false, " [over time limit]".to_string()),
            Ok(false) => (false, String::new()),
            Err(e) => (false, format!(" [error: {e}]")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {} ({:.3} s, limit {} s, exact){note}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
