mod commands;
mod inputs;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::{Outcome, RunReport};

#[derive(Parser)]
#[command(name = "plcat", version, about = "Exact computations with directed A∞-categories over GF(2)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Grading group: z, or z2 for the periodic derived category.
    #[arg(long, global = true, default_value = "z")]
    pub grading: String,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for randomized sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Print the canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the A∞ relations of a category and print its hom table.
    Check { category: String },
    /// Hochschild cohomology dimensions.
    Hh { category: String },
    /// E1 page of the length filtration of the Hochschild complex.
    E1 { category: String },
    /// Derived hom between two twisted complexes (files or object names).
    Dbhom { category: String, source: String, target: String },
    /// Run a mutation script.
    Mutate {
        category: String,
        #[arg(long, default_value = "")]
        script: String,
        /// `hh`: compare Hochschild cohomology before and after.
        #[arg(long)]
        check: Option<String>,
        /// Also try this many random scripts (uses --seed and --threads).
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Image of a twisted complex under the equivalence induced by a script.
    Track {
        category: String,
        object: String,
        #[arg(long)]
        script: String,
    },
    /// Test whether a twisted complex is spherical of the given dimension.
    Spherical {
        category: String,
        object: String,
        #[arg(long)]
        dim: i64,
    },
    /// Detect a matching pair (X_i, X_{i+1}) and print its cone.
    Matching {
        category: String,
        /// 1-based index of the first object.
        #[arg(long)]
        index: usize,
    },
    /// Commuting or braid relation between two spherical twists.
    Braid { category: String, first: String, second: String },
    /// Zero-dimensional configurations.
    Zerodim {
        #[command(subcommand)]
        command: ZeroCommand,
    },
    /// Morse categories from flow data.
    Morse {
        #[command(subcommand)]
        command: MorseCommand,
    },
}

#[derive(Subcommand)]
pub enum ZeroCommand {
    /// Directed Fukaya category as explicit tables.
    Fukaya { config: String },
    /// Topology of the branched cover.
    Topology { config: String },
    /// Relative invariant with the configuration's spheres as boundary arcs.
    Phirel {
        config: String,
        /// Branch transpositions, e.g. `1-2,3-4`.
        #[arg(long, default_value = "")]
        branch: String,
    },
    /// Exact triangle check for three spheres of the configuration.
    Triangle {
        config: String,
        /// 1-based sphere numbers of L, L1, L2.
        #[arg(long, default_value = "1,2,3")]
        spheres: String,
    },
    /// Search for a Hurwitz script between two configurations.
    Orbit {
        from: String,
        to: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

#[derive(Subcommand)]
pub enum MorseCommand {
    /// Morse category as explicit tables.
    Cat { flow: String },
    /// Fundamental object and its endomorphisms.
    Fundamental {
        flow: String,
        /// Expected Betti numbers of B(N,p) from degree 0, e.g. `1,1,1`.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Nondegeneracy of the duality pairing on every generator.
    Verdier { flow: String },
    /// Cellularity and HH against expected Betti numbers.
    Cellular {
        flow: String,
        #[arg(long)]
        expect: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = RunReport::new(&cli.command);
    let result = commands::run(&cli.global, &cli.command, &mut report);
    match result {
        Ok(out) => {
            let Outcome { text, results, verdict } = out;
            report.results = results;
            report.verdict = verdict;
            if cli.global.timing {
                report.wall_ms = Some(start.elapsed().as_millis() as u64);
            }
            if cli.global.json {
                println!("{}", report.to_json());
            } else {
                print!("{text}");
                if let Some(ms) = report.wall_ms {
                    println!("wall time: {ms} ms");
                }
            }
            match verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
