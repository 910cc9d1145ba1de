fn main() {
    std::process::exit(normcurve::cli::run(std::env::args_os()));
}
