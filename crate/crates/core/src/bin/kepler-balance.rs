fn main() {
    std::process::exit(kepler_balance::cli::run(std::env::args_os()));
}
