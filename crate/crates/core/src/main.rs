fn main() {
    cyclopoly::cli::configure_threads();
    let code = cyclopoly::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
