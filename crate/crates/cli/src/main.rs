//! `unitrunc`: command-line access to the truncated unitary convolution ring
//! `𝒜_[n]` and its simplicial complex `Δ([n])`.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use unitrunc_core::arith::{Sieve, DEFAULT_SIEVE_LIMIT};
use unitrunc_core::homology::{self, DEFAULT_SUBSET_CAP};
use unitrunc_core::{asymptotics, complex, presentation, ring, shelling, Error};

use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "unitrunc",
    version,
    about = "Truncated unitary convolution rings and Δ([n])"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Largest integer the prime sieve covers.
    #[arg(long, global = true, env = "UNITRUNC_SIEVE_LIMIT", default_value_t = DEFAULT_SIEVE_LIMIT)]
    sieve_limit: u64,

    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Cap {
    /// Largest vertex count for induced-subcomplex scans (2^R subcomplexes).
    #[arg(long = "cap", default_value_t = DEFAULT_SUBSET_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// π, π′, ℓ, v and π_k at N.
    SpecialFns { n: u64 },
    /// λ^[N], the column heights of the variables.
    Lambda { n: u64 },
    /// Vertices and facets of Δ([N]).
    Complex {
        n: u64,
        /// Emit the 1-skeleton as Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// f-vector of Δ([N]).
    Fvector { n: u64 },
    /// f- and h-vectors of Δ([N]).
    Hvector { n: u64 },
    /// Artinified and Stanley-Reisner Hilbert series.
    Hilbert { n: u64 },
    /// Socle basis of 𝒜_[N].
    Socle { n: u64 },
    /// Socle density: the series constant or an exact count at one N.
    SocleDensity {
        #[arg(
            long,
            conflicts_with = "empirical",
            required_unless_present = "empirical"
        )]
        terms: Option<usize>,
        #[arg(long)]
        empirical: Option<u64>,
    },
    /// Monomial multiplicative syzygies and dim K₂.
    Syzygies { n: u64 },
    /// Minimal generators of A, B and C.
    Generators { n: u64 },
    /// μ(A), μ(B), μ(C).
    Mu { n: u64 },
    /// Largest degree of a minimal generator.
    MaxGenDegree { n: u64 },
    /// Strong multi-stability check with a witness on failure.
    Multistable {
        n: u64,
        /// Degree bound for the exhaustive check; defaults to the largest
        /// generator degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Lexicographic facet order of Δ([N]).
    Shelling {
        n: u64,
        #[arg(long)]
        verify: bool,
    },
    /// Reduced integral homology of Δ([N]).
    Homology { n: u64 },
    /// Largest degree of nonzero reduced homology.
    Homdegree { n: u64 },
    /// Multigraded Betti numbers by Hochster's formula.
    Betti {
        n: u64,
        #[command(flatten)]
        cap: Cap,
    },
    /// Castelnuovo-Mumford regularity.
    Regularity {
        n: u64,
        #[command(flatten)]
        cap: Cap,
    },
    /// Poincaré series over the polynomial and square-zero rings.
    Poincare {
        n: u64,
        #[arg(long, default_value_t = 10)]
        tmax: usize,
        #[command(flatten)]
        cap: Cap,
    },
    /// Exterior-algebra Betti number β_I.
    ExteriorBetti {
        n: u64,
        i: usize,
        #[command(flatten)]
        cap: Cap,
    },
    /// Palindromic Hilbert polynomials for ℓ(n) = r <= RMAX.
    SymmetricScan { rmax: usize },
    /// h₂ of Δ([n]) over a range.
    H2Scan { nmin: u64, nmax: u64 },
    /// Fit of ℓ(n) by the Lambert-W estimate.
    EllGrowth {
        #[arg(long, value_delimiter = ',')]
        samples: Option<Vec<u64>>,
    },
    /// Real-valued growth ln n / ln p_i of λ_i at n = 10^L.
    LambdaEstimate {
        #[arg(long = "log10")]
        log10: f64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

enum Failure {
    Refused(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Refused(e)
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload serializes")
}

fn sieve(limit: u64, need: u64) -> Result<Sieve, Failure> {
    if need > limit {
        return Err(Error::BeyondSieve { value: need, limit }.into());
    }
    Ok(Sieve::new(need.max(100))?)
}

fn warn_cap(cap: usize) {
    if cap > DEFAULT_SUBSET_CAP {
        eprintln!("warning: subset cap {cap} allows up to 2^{cap} induced subcomplexes");
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let limit = cli.sieve_limit;
    Ok(match &cli.command {
        Command::SpecialFns { n } => {
            let sf = sieve(limit, *n)?.special_functions(*n)?;
            let text = format!(
                "n = {}\nπ = {}\nπ′ = {}\nℓ = {}\nv = {}\nπ_k = {:?}",
                sf.n, sf.pi, sf.pi_prime, sf.ell, sf.v, sf.pi_k
            );
            Report::new(to_json(&sf)).text(text)
        }
        Command::Lambda { n } => {
            let l = sieve(limit, *n)?.lambda_vector(*n)?;
            Report::new(to_json(&l)).text(format!("{:?}", l.parts))
        }
        Command::Complex { n, dot } => {
            let c = complex::SimplicialComplex::build(&sieve(limit, *n)?, *n)?;
            let r = Report::new(to_json(&c.summary()));
            if *dot {
                r.text(c.to_dot())
            } else {
                r
            }
        }
        Command::Fvector { n } => {
            let fh = complex::f_h_vectors(&sieve(limit, *n)?, *n)?;
            Report::new(json!({ "n": n, "f": fh.f })).text(format!("{:?}", fh.f))
        }
        Command::Hvector { n } => {
            let fh = complex::f_h_vectors(&sieve(limit, *n)?, *n)?;
            Report::new(to_json(&fh)).text(format!("f = {:?}\nh = {:?}", fh.f, fh.h))
        }
        Command::Hilbert { n } => {
            let hs = complex::hilbert_series(&sieve(limit, *n)?, *n)?;
            let text = format!(
                "artinified: {}\nStanley-Reisner: {}",
                hs.artinified,
                hs.stanley_reisner_display()
            );
            Report::new(to_json(&hs)).text(text)
        }
        Command::Socle { n } => {
            let s = sieve(limit, *n)?;
            let basis = ring::socle_basis(&s, *n)?;
            let text = format!("dim = {}\n{basis:?}", basis.len());
            Report::new(json!({
                "n": n,
                "basis": basis,
                "dimension": basis.len(),
                "gorenstein": basis.len() == 1,
            }))
            .text(text)
        }
        Command::SocleDensity { terms, empirical } => match (terms, empirical) {
            (Some(t), _) => {
                let t = *t;
                // p_{t+1} < (t+1)(ln(t+1) + ln ln(t+1)) for t + 1 >= 6
                let x = (t + 1).max(6) as f64;
                let need = (x * (x.ln() + x.ln().ln())) as u64 + 10;
                let c = ring::socle_density_constant(&sieve(limit, need)?, t)?;
                let decimal = c.decimal(30);
                Report::new(json!({
                    "terms": t,
                    "decimal": decimal,
                    "exact": c.exact.to_string(),
                }))
                .text(decimal)
            }
            (None, Some(n)) => {
                let s = sieve(limit, *n)?;
                let dim = ring::socle_basis(&s, *n)?.len();
                let density = dim as f64 / *n as f64;
                Report::new(json!({ "n": n, "dimension": dim, "density": density }))
                    .text(format!("{dim} / {n} = {density}"))
            }
            (None, None) => unreachable!("clap requires one of the flags"),
        },
        Command::Syzygies { n } => {
            let s = sieve(limit, *n)?;
            let m = ring::monomial_syzygies(*n)?;
            let full_columns: Vec<u64> = (2..=*n).filter(|&i| m.column_contained(i)).collect();
            Report::new(json!({
                "n": n,
                "count": m.len(),
                "k2_dimension": ring::k2_dimension(*n),
                "k2_dimension_exact": ring::k2_dimension_exact(&s, *n)?,
                "full_columns": full_columns,
            }))
        }
        Command::Generators { n } => {
            let pres = presentation::generators(&sieve(limit, *n)?, *n)?;
            let mut rows: Vec<Vec<String>> = Vec::new();
            for v in &pres.gens_a {
                rows.push(vec!["A".into(), format!("{0}*{0}", v.value())]);
            }
            for (x, y) in &pres.gens_b {
                rows.push(vec!["B".into(), format!("{}*{}", x.value(), y.value())]);
            }
            for &k in &pres.gens_c {
                let vars = pres.c_monomial(k).unwrap_or_default();
                let parts: Vec<String> = vars.iter().map(|v| v.value().to_string()).collect();
                rows.push(vec!["C".into(), parts.join("*")]);
            }
            let text = format!(
                "{} variables\nA: {} squares\nB: {:?}\nC: {:?}",
                pres.variables.len(),
                pres.gens_a.len(),
                pres.gens_b
                    .iter()
                    .map(|(x, y)| (x.value(), y.value()))
                    .collect::<Vec<_>>(),
                pres.gens_c
            );
            Report::new(to_json(&pres))
                .table(vec!["ideal", "generator"], rows)
                .text(text)
        }
        Command::Mu { n } => {
            let mu = presentation::mu_counts(&sieve(limit, *n)?, *n)?;
            Report::new(to_json(&mu))
        }
        Command::MaxGenDegree { n } => {
            let d = presentation::max_generator_degree(&sieve(limit, *n)?, *n)?;
            Report::new(json!({ "n": n, "degree": d, "quadratic": d <= 2 })).text(d.to_string())
        }
        Command::Multistable { n, degree } => {
            let w = presentation::check_multistability(&sieve(limit, *n)?, *n, *degree)?;
            Report::new(json!({ "n": n, "degree_cap": degree, "holds": w.is_none(), "witness": w }))
        }
        Command::Shelling { n, verify } => {
            let order = shelling::shelling_order(&sieve(limit, *n)?, *n)?;
            let mut payload = json!({ "n": n, "order": order.facets });
            let mut text = format!("{:?}", order.facets);
            if *verify {
                let verdict = shelling::verify_shelling(&order);
                text.push_str(&format!("\n{verdict:?}"));
                payload["verdict"] = to_json(&verdict);
            }
            Report::new(payload).text(text)
        }
        Command::Homology { n } => {
            let c = complex::SimplicialComplex::build(&sieve(limit, *n)?, *n)?;
            let h = homology::reduced_homology(&c)?;
            let rows = h
                .groups
                .iter()
                .map(|g| {
                    vec![
                        g.degree.to_string(),
                        g.rank.to_string(),
                        format!("{:?}", g.torsion),
                    ]
                })
                .collect();
            Report::new(json!({ "n": n, "groups": h.groups }))
                .table(vec!["degree", "rank", "torsion"], rows)
        }
        Command::Homdegree { n } => {
            let d = homology::homological_degree(&sieve(limit, *n)?, *n)?;
            Report::new(json!({ "n": n, "degree": d })).text(d.to_string())
        }
        Command::Betti { n, cap } => {
            warn_cap(cap.cap);
            let table = homology::hochster_betti(&sieve(limit, *n)?, *n, cap.cap)?;
            let rows = table
                .entries
                .iter()
                .map(|e| {
                    let u: Vec<String> = e.u.iter().map(u64::to_string).collect();
                    vec![e.i.to_string(), u.join(" "), e.value.to_string()]
                })
                .collect();
            let text = format!("β = {:?}", table.coarse());
            Report::new(to_json(&table))
                .table(vec!["i", "U", "value"], rows)
                .text(text)
        }
        Command::Regularity { n, cap } => {
            warn_cap(cap.cap);
            let r = homology::regularity(&sieve(limit, *n)?, *n, cap.cap)?;
            Report::new(json!({ "n": n, "regularity": r })).text(r.to_string())
        }
        Command::Poincare { n, tmax, cap } => {
            warn_cap(cap.cap);
            let p = homology::poincare_series(&sieve(limit, *n)?, *n, *tmax, cap.cap)?;
            let rows = (0..=*tmax)
                .map(|k| {
                    vec![
                        k.to_string(),
                        p.polynomial_ring[k].to_string(),
                        p.square_zero_ring[k].to_string(),
                    ]
                })
                .collect();
            Report::new(to_json(&p))
                .table(vec!["degree", "polynomial_ring", "square_zero_ring"], rows)
        }
        Command::ExteriorBetti { n, i, cap } => {
            warn_cap(cap.cap);
            let b = homology::exterior_betti(&sieve(limit, *n)?, *n, *i, cap.cap)?;
            Report::new(json!({ "n": n, "i": i, "value": b })).text(b.to_string())
        }
        Command::SymmetricScan { rmax } => {
            let scan = complex::symmetric_scan(&Sieve::new(limit)?, *rmax)?;
            let rows: Vec<Vec<String>> = scan
                .matches
                .iter()
                .map(|m| vec![m.r.to_string(), m.n.to_string(), m.polynomial.to_string()])
                .collect();
            let text = rows
                .iter()
                .map(|r| r.join(" | "))
                .collect::<Vec<_>>()
                .join("\n");
            Report::new(to_json(&scan))
                .table(vec!["r", "n", "polynomial"], rows)
                .text(text)
        }
        Command::H2Scan { nmin, nmax } => {
            let rows = complex::h2_scan(&sieve(limit, nmax.saturating_add(1))?, *nmin, *nmax)?;
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.h2.to_string(),
                        r.ell_jump.to_string(),
                        r.local_max.to_string(),
                    ]
                })
                .collect();
            Report::new(to_json(&rows)).table(vec!["n", "h2", "ell_jump", "local_max"], table)
        }
        Command::EllGrowth { samples } => {
            let samples = samples
                .clone()
                .unwrap_or_else(asymptotics::default_growth_samples);
            let g = asymptotics::growth_experiment(&samples)?;
            let rows = g
                .samples
                .iter()
                .map(|s| vec![s.n.to_string(), s.ell.to_string(), s.estimate.to_string()])
                .collect();
            let text = format!(
                "C = {}\nℓ(n) / m_C(n) in [{}, {}]",
                g.c, g.ratio_low, g.ratio_high
            );
            Report::new(to_json(&g))
                .table(vec!["n", "ell", "estimate"], rows)
                .text(text)
        }
        Command::LambdaEstimate { log10, count } => {
            let x = (*count).max(6) as f64;
            let need = (x * (x.ln() + x.ln().ln())) as u64 + 10;
            let s = sieve(limit, need)?;
            let estimates = (1..=*count)
                .map(|i| {
                    Ok(json!({
                        "i": i,
                        "prime": s.nth_prime(i),
                        "value": s.lambda_estimate(*log10, i)?,
                    }))
                })
                .collect::<Result<Vec<Value>, Error>>()?;
            let rows = estimates
                .iter()
                .map(|e| {
                    vec![
                        report::cell(&e["i"]),
                        report::cell(&e["prime"]),
                        report::cell(&e["value"]),
                    ]
                })
                .collect();
            Report::new(json!({ "log10_n": log10, "estimates": estimates }))
                .table(vec!["i", "prime", "value"], rows)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        report
            .render(cli.format)
            .map_err(|e| Failure::Io(e.to_string()))
    });
    let payload = match outcome {
        Ok(p) => p,
        Err(Failure::Refused(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, payload),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(payload.as_bytes())
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
