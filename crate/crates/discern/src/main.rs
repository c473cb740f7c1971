fn main() {
    std::process::exit(discern::cli::run());
}
