use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = bridgegenus_cli::run(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut stderr.lock(),
        bridgegenus_cli::color_enabled(),
    );
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
