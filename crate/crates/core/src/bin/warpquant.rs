fn main() {
    std::process::exit(warpquant::cli::run(std::env::args_os()));
}
