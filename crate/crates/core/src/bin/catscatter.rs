fn main() {
    env_logger::init();
    let code = catscatter::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
