use clap::Parser;

fn main() {
    let cli = pdc_scan::cli::Cli::parse();
    if let Err(e) = pdc_scan::cli::run(&cli) {
        eprintln!("pdc-scan: {e}");
        std::process::exit(e.exit_code());
    }
}
