use clap::Parser;
use folred::report::{
    run_pipeline, split_input, Pipeline, RunConfig, DEFAULT_DEPTH_LIMIT, DEFAULT_ORDER,
};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// Exact reduction and formal classification of foliation germs.
#[derive(Parser, Debug)]
#[command(name = "folred", version)]
struct Args {
    /// classify | seidenberg | pair-reduce | normal-form | holonomy |
    /// conjugacy-decide | verify-conjugacy
    #[arg(long)]
    pipeline: String,

    /// Input expressions: a file path (one expression per line) or inline
    /// text (expressions separated by newlines or semicolons)
    #[arg(long)]
    input: String,

    /// Truncation order of the series arithmetic
    #[arg(long)]
    order: Option<usize>,

    /// Maximum blow-up depth for the tree pipelines
    #[arg(long)]
    depth_limit: Option<usize>,

    /// Write the DOT rendering of the reduction tree here
    #[arg(long)]
    emit_dot: Option<PathBuf>,

    /// Also write the JSON report to this path (it always goes to stdout)
    #[arg(long)]
    json: Option<PathBuf>,

    /// Config file with default `order` and `depth_limit` (default:
    /// folred.toml in the working directory, if present)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Default, serde::Deserialize)]
struct FileConfig {
    order: Option<usize>,
    depth_limit: Option<usize>,
}

fn load_config(path: Option<&PathBuf>) -> Result<FileConfig, String> {
    let (text, required) = match path {
        Some(p) => (fs::read_to_string(p).map_err(|e| format!("{}: {}", p.display(), e))?, true),
        None => match fs::read_to_string("folred.toml") {
            Ok(t) => (t, false),
            Err(_) => return Ok(FileConfig::default()),
        },
    };
    toml::from_str(&text).map_err(|e| {
        let name = if required {
            path.unwrap().display().to_string()
        } else {
            "folred.toml".into()
        };
        format!("{}: {}", name, e)
    })
}

fn read_input(arg: &str) -> Vec<String> {
    let text = match fs::read_to_string(arg) {
        Ok(t) => t,
        Err(_) => arg.replace(';', "\n"),
    };
    split_input(&text)
}

fn run(args: &Args) -> Result<(), (String, i32)> {
    let pipeline =
        Pipeline::from_name(&args.pipeline).map_err(|e| (e.to_string(), e.exit_code()))?;
    let file_cfg = load_config(args.config.as_ref()).map_err(|m| (m, 2))?;
    let cfg = RunConfig {
        pipeline,
        order: args.order.or(file_cfg.order).unwrap_or(DEFAULT_ORDER),
        depth_limit: args
            .depth_limit
            .or(file_cfg.depth_limit)
            .unwrap_or(DEFAULT_DEPTH_LIMIT),
    };
    let exprs = read_input(&args.input);
    let started = Instant::now();
    let out = run_pipeline(&exprs, &cfg)
        .map_err(|e| (format!("{}: {}", e.code(), e), e.exit_code()))?;
    eprintln!("elapsed: {:?}", started.elapsed());
    let doc = serde_json::to_string_pretty(&out.report).expect("report serializes");
    println!("{}", doc);
    if let Some(path) = &args.json {
        fs::write(path, format!("{}\n", doc)).map_err(|e| (format!("{}: {}", path.display(), e), 2))?;
    }
    if let Some(path) = &args.emit_dot {
        match &out.dot {
            Some(dot) => fs::write(path, dot)
                .map_err(|e| (format!("{}: {}", path.display(), e), 2))?,
            None => {
                return Err((
                    format!("pipeline '{}' produces no tree to render", pipeline.name()),
                    2,
                ))
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err((msg, code)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code as u8)
        }
    }
}
