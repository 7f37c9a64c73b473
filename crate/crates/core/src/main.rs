fn main() {
    std::process::exit(coresolve::cli::run());
}
