use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Debug, Parser)]
#[command(
    name = "prymlat",
    version,
    about = "Exact computations with integral lattices carrying an involution"
)]
pub struct Cli {
    /// Machine-readable JSON instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn big(s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|_| format!("not an integer: {:?}", s))
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file; standard input when absent or `-`.
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    /// Number of isolated fixed points.
    #[arg(long = "r", conflicts_with = "free")]
    pub r: Option<usize>,
    /// Fixed-point-free involution.
    #[arg(long)]
    pub free: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Run on this many synthetic instances instead of an input file.
    #[arg(long)]
    pub sweep: Option<usize>,
    /// Number of swapped hyperbolic planes in synthetic instances.
    #[arg(long, default_value_t = 3)]
    pub r0: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a G-module into Z[G], Z₊ and Z₋ summands.
    Decompose(Input),
    /// Group cohomology of a G-module.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0usize, 1, 2])]
        degrees: Vec<usize>,
        /// Also compare n-torsion of the anti-invariants with the Prym part at this level.
        #[arg(long)]
        torsion_level: Option<u64>,
    },
    /// Prym lattice of the orthogonal complement of a sublattice.
    Prym {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "M")]
        sub: String,
    },
    /// Discriminant G-module of the lattice, or of a named sublattice.
    Discriminant {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        sub: Option<String>,
    },
    /// Scale of a vector and the (±)-modified form.
    Modify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, value_parser = big, required = true)]
        vector: Vec<BigInt>,
        /// `+` or `-`.
        #[arg(long, default_value = "-", allow_hyphen_values = true)]
        sign: String,
        /// Negate the modified form.
        #[arg(long)]
        negate: bool,
    },
    /// Rank of the Prym lattice against the closed form.
    VerifyRank {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "M")]
        sub: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Determinant of the Prym lattice against the closed form.
    VerifyDet {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "M")]
        sub: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Check a pair of correspondences Φ, Ψ against the Prym lattice.
    VerifyCorrespondence {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "M")]
        sub: String,
        /// Build Λ_X, Φ, Ψ from the lattice instead of reading them.
        #[arg(long)]
        canonical: bool,
        /// Fixed points for synthetic instances.
        #[arg(long = "r", default_value_t = 4)]
        r: usize,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Finite-level Brauer group sequences.
    Brauer {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "M")]
        sub: String,
        #[arg(long, default_value = "Hdg")]
        hdg: String,
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5, 9, 15])]
        levels: Vec<u64>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Invariant tables for the quotient of a surface by an involution.
    Surface {
        /// Second Betti number; symbolic when omitted.
        #[arg(long)]
        h2: Option<usize>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Built-in lattices, as lattice files (or a report with `--report`).
    Preset {
        name: PresetName,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        d: Option<i64>,
        /// x² and x·σx for the conic parity preset.
        #[arg(long, allow_negative_numbers = true)]
        x2: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        xsx: Option<i64>,
        /// Coefficients of the anti-invariant class for picard3-embedded.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        t: Option<Vec<i64>>,
        #[arg(long)]
        report: bool,
    },
    /// Split bundles on the projective line.
    Bundle {
        action: BundleAction,
        /// Bundle file `{"degrees": [...]}`; ignored when --degrees is given.
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        degrees: Option<Vec<i64>>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k: i64,
    },
    /// Chow ring of the relative Grassmannian G(2, E) over P³.
    Chow {
        action: ChowAction,
        /// Ambient file `{"gamma": [g1, g2, g3], "lambda": l}`; ignored when --gamma is given.
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        gamma: Option<Vec<i64>>,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetName {
    /// Rank 2 lattice spanned by C and σC.
    CubicM,
    /// Unimodular lattice containing cubic-m, with sublattices M and Hdg.
    CubicAmbient,
    /// Picard rank 3 lattice; needs --m and --d.
    Picard3,
    /// Picard rank 3 lattice inside a unimodular lattice with H¹ = 0, with sublattices M and Hdg; needs --t.
    Picard3Embedded,
    /// Degree 14 K3^[2] data.
    Bd,
    /// Conic bundle parity; needs --x2 and --xsx.
    Conic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BundleAction {
    /// h⁰(P(E), O(mξ + kf)).
    H0,
    /// Splitting type of Sym^m(E*) ⊗ O(k).
    Split,
    /// h⁰ and h¹ of E ⊗ O(k).
    Cohomology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChowAction {
    /// Class of S, the pairing against the degeneration divisor, and its parity.
    Parity,
    /// Chern classes of V₂.
    Chern,
    /// Degree of the degeneration divisor.
    Degree,
}
