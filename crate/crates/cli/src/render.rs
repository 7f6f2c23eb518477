//! Plain-text renderings for `--format text`.

use std::fmt::Write;

use lexrank_core::kronecker::PhiSet;
use lexrank_core::quantum::StateReport;
use lexrank_core::strip_type::{CounterexampleReport, MaxLexSpectrum};

pub fn phi(phi: &PhiSet) -> String {
    let mut s = format!("Phi({}, {}): {} members\n", phi.lam, phi.mu, phi.members.len());
    for m in &phi.members {
        let _ = writeln!(s, "{} {}", m.nu, m.g);
    }
    s.trim_end().to_string()
}

pub fn maxlex(s: &MaxLexSpectrum) -> String {
    format!("spectrum {}\nnu {}\nk {}\nrank {}", s.spectrum.to_strings().join(" "), s.nu, s.k, s.rank())
}

pub fn counterexample(r: &CounterexampleReport) -> String {
    let g = r.witness_g.map_or_else(|| "not evaluated".to_string(), |g| g.to_string());
    format!(
        "(n, m) = ({}, {})\nmax-lex nu {} rank {}\nwitness {} rank {} g {}\nrank lower bound {}\nrefutes {}",
        r.n,
        r.m,
        r.maxlex_nu,
        r.maxlex_rank,
        r.witness_gamma,
        r.witness_gamma.length(),
        g,
        r.min_rank_bound,
        r.refutes_conjecture
    )
}

pub fn state_report(r: &StateReport) -> String {
    let spectrum: Vec<String> = r.spectrum.iter().map(|x| format!("{x:.6}")).collect();
    format!(
        "dims {}x{}\ntrace {:.12}\nmargin deviations {:e} {:e} (uniform: {})\nspectrum {}\nrank {} in [{}, {}]: {}\nextreme {} (nullity {}, reliable {})\npassed {}",
        r.dim_a,
        r.dim_b,
        r.trace,
        r.margin_a_deviation,
        r.margin_b_deviation,
        r.margins_uniform,
        spectrum.join(" "),
        r.rank,
        r.rank_bounds.lower,
        r.rank_bounds.upper,
        r.rank_within_bounds,
        r.extremality.is_extreme,
        r.extremality.nullity,
        r.extremality.reliable,
        r.passed
    )
}
