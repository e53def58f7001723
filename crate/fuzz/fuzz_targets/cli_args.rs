#![no_main]

//! Argument vectors split on NUL. Work sizes are capped so each input stays
//! cheap; the driver must never panic and must exit with 0, 1 or 2.

use libfuzzer_sys::fuzz_target;
use quadtau::cli::{run, Cli, Command};
use clap::Parser;

const MAX_WORK: u64 = 20_000;

fn cheap(cli: &Cli) -> bool {
    match &cli.command {
        Command::Constants { .. } => true,
        Command::Table { empirical_n } => *empirical_n <= MAX_WORK,
        Command::Verify { n_max, .. } => *n_max <= MAX_WORK,
        Command::Charsum { n_max, delta } => *n_max <= MAX_WORK && delta.unsigned_abs() <= MAX_WORK,
        Command::RhoCheck { d_max, .. } => *d_max <= 2_000,
        Command::Sweep { ns, .. } => ns.0.iter().all(|&n| n <= MAX_WORK),
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = std::iter::once("quadtau").chain(s.split('\0')).collect();
    let Ok(cli) = Cli::try_parse_from(args.iter().copied()) else {
        let code = run(args.iter().copied(), &mut Vec::new(), &mut Vec::new());
        assert!(code == 0 || code == 2);
        return;
    };
    if cli.out.is_some() || !cheap(&cli) {
        return;
    }
    let code = run(args.iter().copied(), &mut Vec::new(), &mut Vec::new());
    assert!((0..=2).contains(&code));
});
