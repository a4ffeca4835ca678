use clap::Parser;
use skolem_cli::{run, CliConfig, EXIT_USAGE};

fn main() {
    let cfg = match CliConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = run(&cfg, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
