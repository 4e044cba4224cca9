use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use shalg::cli::{cmd_move, cmd_operad, cmd_verify, Bounds, Format, MoveInputs, MoveKind, OperadSub, VerifyKind};

/// Exact verification of A-infinity structures, homotopy transfer moves and
/// operad differentials. Exit status: 0 all checks pass, 1 a check failed,
/// 2 the inputs could not be used.
#[derive(Parser)]
#[command(name = "shalg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Truncation order N.
    #[arg(long = "bound-n", global = true)]
    bound_n: Option<usize>,
    /// Arity bound for operad computations.
    #[arg(long, global = true)]
    arity: Option<usize>,
    /// Tree length (vertex count) bound.
    #[arg(long, global = true)]
    length: Option<usize>,
    /// Directory for files written by moves.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check the identities of a structure, morphism, SDR or operad action file.
    Verify {
        #[arg(value_enum)]
        kind: VerifyArg,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a move and re-verify its outputs.
    Move {
        #[arg(value_enum)]
        kind: MoveArg,
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long)]
        sdr: Option<PathBuf>,
        /// Repeat for m4; the first one is applied first.
        #[arg(long)]
        morphism: Vec<PathBuf>,
        /// Named maps: g, h (m2, m4); g, h, l (m3); target, f, g, h (s).
        #[arg(long)]
        data: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Operad computations on built-in or file presentations.
    Operad {
        #[arg(value_enum)]
        sub: OperadArg,
        args: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    Ainf,
    Morphism,
    Sdr,
    Action,
}

#[derive(Clone, Copy, ValueEnum)]
enum MoveArg {
    M1,
    M2,
    M3,
    M4,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperadArg {
    D2,
    Homology,
    Kunneth,
    RisoExtend,
    TreeDims,
    Signs,
}

impl Common {
    fn bounds(&self) -> Bounds {
        Bounds {
            n: self.bound_n,
            arity: self.arity,
            length: self.length,
        }
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, common) = match &cli.command {
        Command::Verify { kind, file, common } => {
            let kind = match kind {
                VerifyArg::Ainf => VerifyKind::Ainf,
                VerifyArg::Morphism => VerifyKind::Morphism,
                VerifyArg::Sdr => VerifyKind::Sdr,
                VerifyArg::Action => VerifyKind::Action,
            };
            (cmd_verify(kind, file, &common.bounds()), common)
        }
        Command::Move {
            kind,
            structure,
            sdr,
            morphism,
            data,
            common,
        } => {
            let kind = match kind {
                MoveArg::M1 => MoveKind::M1,
                MoveArg::M2 => MoveKind::M2,
                MoveArg::M3 => MoveKind::M3,
                MoveArg::M4 => MoveKind::M4,
                MoveArg::S => MoveKind::S,
            };
            let inputs = MoveInputs {
                structure: structure.clone(),
                sdr: sdr.clone(),
                morphisms: morphism.clone(),
                data: data.clone(),
            };
            (cmd_move(kind, &inputs, &common.bounds(), common.out.as_deref()), common)
        }
        Command::Operad { sub, args, common } => {
            let sub = match sub {
                OperadArg::D2 => OperadSub::D2,
                OperadArg::Homology => OperadSub::Homology,
                OperadArg::Kunneth => OperadSub::Kunneth,
                OperadArg::RisoExtend => OperadSub::RisoExtend,
                OperadArg::TreeDims => OperadSub::TreeDims,
                OperadArg::Signs => OperadSub::Signs,
            };
            (cmd_operad(sub, args, &common.bounds()), common)
        }
    };
    match result {
        Ok(cert) => {
            print!("{}", cert.render(common.format()));
            ExitCode::from(cert.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
