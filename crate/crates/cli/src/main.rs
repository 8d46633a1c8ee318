use std::io::{self, Write};
use std::ops::Range;
use std::path::PathBuf;
use std::process::ExitCode;

use boggle_core::classes::{enumerate_classes, Bucketing};
use boggle_core::hillclimb::hillclimb;
use boggle_core::pipeline::{search, SearchConfig};
use boggle_core::scorer::score_rate_benchmark;
use boggle_core::tree::{build_tree, Arena, BuildOptions, PathOrder};
use boggle_core::{
    Board, BoardClass, BucketSpec, CellOrder, Dims, Lexicon, ScoreTable, Scorer, Trie,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "boggle",
    version,
    about = "Find and prove the best Boggle boards"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Board size as MxN.
    #[arg(long, default_value = "4x4")]
    dims: Dims,
    /// Word list, one word per line.
    #[arg(long)]
    wordlist: PathBuf,
    /// classic, word_count or powers_of_two.
    #[arg(long, default_value = "classic")]
    table: ScoreTable,
}

#[derive(Subcommand)]
enum Command {
    /// Score a board.
    Score {
        #[arg(long)]
        board: String,
        #[command(flatten)]
        common: Common,
        /// Print the Multiboggle score (every path counts).
        #[arg(long, conflicts_with = "dedup")]
        multi: bool,
        /// Print the de-duplicated Multiboggle score.
        #[arg(long)]
        dedup: bool,
        /// Also print each word with its points.
        #[arg(long)]
        list_words: bool,
    },
    /// Hillclimb from random boards.
    Hillclimb {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 500)]
        pool: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of runs; run i uses seed + i.
        #[arg(long, default_value_t = 1)]
        runs: u64,
    },
    /// List canonical board classes.
    Enumerate {
        #[arg(long)]
        dims: Dims,
        /// Buckets per cell: N, or C:O for corners and other cells.
        #[arg(long)]
        buckets: BucketSpec,
        #[arg(long)]
        count_only: bool,
    },
    /// Build the tree for one class and report its bound.
    Bound {
        /// Whitespace-separated letter sets, row-major.
        #[arg(long)]
        class: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dedupe: bool,
        /// Insert paths in spelling order instead of cell order.
        #[arg(long)]
        spelling_order: bool,
        /// Also evaluate the tree at this board.
        #[arg(long)]
        force: Option<String>,
    },
    /// Branch-and-bound search for every board scoring at least --s-high.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        buckets: BucketSpec,
        #[arg(long)]
        s_high: u32,
        /// Task index range A..B (half-open).
        #[arg(long, value_parser = parse_tasks)]
        tasks: Option<Range<usize>>,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, default_value_t = 1.5)]
        switchover_ratio: f64,
        #[arg(long, default_value_t = 4)]
        switchover_cells: usize,
        #[arg(long)]
        no_dedupe: bool,
        /// Output directory for results, stats and checkpoint.
        #[arg(long)]
        out: PathBuf,
    },
    /// Measure random-board scoring throughput.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100_000)]
        boards: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_tasks(s: &str) -> Result<Range<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a = a.parse().map_err(|_| format!("bad start in {s:?}"))?;
    let b = b.parse().map_err(|_| format!("bad end in {s:?}"))?;
    if a > b {
        return Err(format!("reversed range {s:?}"));
    }
    Ok(a..b)
}

fn load(common: &Common) -> boggle_core::Result<Trie> {
    let lexicon = Lexicon::load(&common.wordlist, boggle_core::lexicon::DEFAULT_MIN_LEN)?;
    Ok(Trie::build(&lexicon))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Score {
            board,
            common,
            multi,
            dedup,
            list_words,
        } => {
            let board = Board::parse(&board, common.dims)?;
            let trie = load(&common)?;
            let mut scorer = Scorer::new(&trie, common.dims, common.table.clone());
            if multi {
                writeln!(out, "{}", scorer.multiboggle(&board))?;
            } else if dedup {
                writeln!(out, "{}", scorer.deduped_multiboggle(&board))?;
            } else {
                let s = scorer.score_and_count(&board);
                writeln!(out, "{}\t{}", s.points, s.words)?;
            }
            if list_words {
                for hit in scorer.find_words(&board) {
                    let points = common
                        .table
                        .points(boggle_core::lexicon::letter_length(&hit.word));
                    writeln!(out, "{}\t{}", hit.spelled(), points)?;
                }
            }
        }
        Command::Hillclimb {
            common,
            pool,
            seed,
            runs,
        } => {
            if pool == 0 {
                return Err("--pool must be at least 1".into());
            }
            let trie = load(&common)?;
            for i in 0..runs {
                let s = seed + i;
                let result = hillclimb(common.dims, pool, s, &trie, &common.table);
                if let Some((board, score)) = result.best() {
                    writeln!(out, "{s}\t{board}\t{score}")?;
                }
                out.flush()?;
            }
        }
        Command::Enumerate {
            dims,
            buckets,
            count_only,
        } => {
            let bucketing = Bucketing::new(dims, buckets)?;
            if count_only {
                writeln!(out, "{}", enumerate_classes(bucketing).count())?;
            } else {
                for task in enumerate_classes(bucketing) {
                    writeln!(out, "{}\t{}", task.index, task.class)?;
                }
            }
        }
        Command::Bound {
            class,
            common,
            dedupe,
            spelling_order,
            force,
        } => {
            let class = BoardClass::parse(&class, common.dims)?;
            let force = force.map(|b| Board::parse(&b, common.dims)).transpose()?;
            let trie = load(&common)?;
            let order = CellOrder::new(common.dims);
            let options = BuildOptions {
                order: if spelling_order {
                    PathOrder::Spelling
                } else {
                    PathOrder::Orderly(&order)
                },
                dedupe,
            };
            let mut arena = Arena::new();
            let root = build_tree(&mut arena, &class, &trie, &common.table, options);
            writeln!(out, "bound\t{}", arena.bound(root))?;
            writeln!(out, "nodes\t{}", arena.node_count(root))?;
            if let Some(board) = force {
                writeln!(out, "force\t{}", arena.force(root, &board))?;
            }
        }
        Command::Search {
            common,
            buckets,
            s_high,
            tasks,
            workers,
            switchover_ratio,
            switchover_cells,
            no_dedupe,
            out: dir,
        } => {
            let mut cfg = SearchConfig::new(common.dims, buckets, s_high);
            cfg.table = common.table.clone();
            cfg.tasks = tasks;
            cfg.workers = workers;
            cfg.switchover_ratio = switchover_ratio;
            cfg.switchover_cells = switchover_cells;
            cfg.dedupe = !no_dedupe;
            cfg.out_dir = Some(dir);
            cfg.validate()?;
            let trie = load(&common)?;
            let report = search(&cfg, &trie)?;
            for f in &report.boards {
                writeln!(out, "{}\t{}\t{}", f.board, f.score, f.words)?;
            }
            eprintln!(
                "{} boards from {} classes ({} run now)",
                report.boards.len(),
                report.tasks_selected,
                report.tasks_run
            );
        }
        Command::Bench {
            common,
            boards,
            seed,
        } => {
            let trie = load(&common)?;
            let r = score_rate_benchmark(common.dims, &trie, &common.table, boards, seed)?;
            writeln!(
                out,
                "{}\t{:.3}\t{:.0}\t{:.3}",
                r.boards, r.seconds, r.boards_per_second, r.mean_score
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|_| out.flush().map_err(Into::into));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
